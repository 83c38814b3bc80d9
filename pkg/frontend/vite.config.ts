import { defineConfig } from "vitest/config";

export default defineConfig({
  server: {
    proxy: {
      "/contexts": "http://127.0.0.1:8000",
      "/sessions": "http://127.0.0.1:8000",
    },
  },
  test: {
    environment: "happy-dom",
    include: ["tests/**/*.test.ts"],
  },
});
