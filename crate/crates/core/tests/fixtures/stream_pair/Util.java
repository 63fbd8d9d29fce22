package demo;

import java.io.*;

public class Util {

    public String convertInputStreamToString(InputStream is) {
        InputStreamReader isr = new InputStreamReader(is);
        BufferedReader r = new BufferedReader(isr);
        StringBuilder sb = new StringBuilder();
        String line;
        while ((line = r.readLine()) != null) {
            sb.append(line);
        }
        return sb.toString();
    }

    public String convertInputStream2String(InputStream is) {
        return convert(is);
    }
}
