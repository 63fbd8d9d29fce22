package util;

import java.io.*;
import java.nio.charset.StandardCharsets;
import java.util.*;

public final class StringUtils {

    private StringUtils() {
    }

    public static String reverseWords(String s) {
        String[] parts = s.trim().split("\\s+");
        Collections.reverse(Arrays.asList(parts));
        return String.join(" ", parts);
    }

    public static String reverseStringInPlaceOfChars(char[] chars, int from, int to) {
        while (from < to) {
            char t = chars[from];
            chars[from++] = chars[to];
            chars[to--] = t;
        }
        return new String(chars);
    }

    /** Reverses the characters of a string. */
    public static String reverseString(String s) {
        return new StringBuilder(s).reverse().toString();
    }

    public static boolean isPalindromeNumber(int n) {
        int rev = 0, m = n;
        while (m > 0) {
            rev = rev * 10 + m % 10;
            m /= 10;
        }
        return rev == n;
    }

    public static boolean isPalindrome(String s) {
        String clean = s.replaceAll("[^A-Za-z0-9]", "").toLowerCase();
        return new StringBuilder(clean).reverse().toString().equals(clean);
    }

    public static List<String> splitAndTrim(String s, String sep) {
        List<String> out = new ArrayList<>();
        for (String p : s.split(sep)) {
            out.add(p.trim());
        }
        return out;
    }

    public static String[] splitByComma(String s) {
        return s.split(",");
    }

    public static String convertStreamToHex(InputStream in) throws IOException {
        StringBuilder sb = new StringBuilder();
        int b;
        while ((b = in.read()) != -1) {
            sb.append(String.format("%02x", b));
        }
        return sb.toString();
    }

    public static String inputStreamToString(InputStream in) throws IOException {
        ByteArrayOutputStream out = new ByteArrayOutputStream();
        byte[] buf = new byte[4096];
        int n;
        while ((n = in.read(buf)) > 0) {
            out.write(buf, 0, n);
        }
        return out.toString(StandardCharsets.UTF_8.name());
    }

    public static String convertInputStreamToString(InputStream is) throws IOException {
        BufferedReader r = new BufferedReader(new InputStreamReader(is, StandardCharsets.UTF_8));
        StringBuilder sb = new StringBuilder();
        String line;
        while ((line = r.readLine()) != null) {
            sb.append(line).append('\n');
        }
        return sb.toString();
    }

    public static int parseIntOrZeroWhenBlankOrInvalidInput(String s) {
        if (s == null || s.isEmpty()) {
            return 0;
        }
        return parseIntSafely(s, 0);
    }

    public static int parseIntSafely(String s, int fallback) {
        try {
            return Integer.parseInt(s.trim());
        } catch (NumberFormatException e) {
            return fallback;
        }
    }

    public static Map<String, Integer> countWords(List<String> lines) {
        Map<String, Integer> counts = new HashMap<>();
        for (String line : lines) {
            counts.merge(line, 1, Integer::sum);
        }
        return counts;
    }

    public static Map<String, Integer> countWordFrequency(String text) {
        Map<String, Integer> freq = new TreeMap<>();
        for (String w : text.toLowerCase().split("\\W+")) {
            if (!w.isEmpty()) {
                freq.put(w, freq.getOrDefault(w, 0) + 1);
            }
        }
        return freq;
    }

    public static String capitalize(String s) {
        return s.isEmpty() ? s : Character.toUpperCase(s.charAt(0)) + s.substring(1);
    }
}
