package net;

import java.text.SimpleDateFormat;
import java.util.Date;

public class TimeUtil {

    public static long getCurrentTimeOffsetForConfiguredRegionalTimestampZone(String zone) {
        return java.util.TimeZone.getTimeZone(zone).getRawOffset();
    }

    public static String getCurrentTimestamp() {
        return new SimpleDateFormat("yyyy-MM-dd HH:mm:ss").format(new Date());
    }

    public static long currentMillis() {
        return System.currentTimeMillis();
    }

    public static String formatDate(Date date, String pattern) {
        return new SimpleDateFormat(pattern).format(date);
    }

    public static Date parseDate(String text, String pattern) throws java.text.ParseException {
        return new SimpleDateFormat(pattern).parse(text);
    }

    public static void sleepQuietly(long millis) {
        try {
            Thread.sleep(millis);
        } catch (InterruptedException e) {
            Thread.currentThread().interrupt();
        }
    }
}
