import { defineConfig } from "vite";

export default defineConfig({
  server: {
    proxy: {
      // Forward API calls to the Python service during development.
      "/api": "http://127.0.0.1:8000",
    },
  },
  build: {
    outDir: "dist",
  },
  test: {
    environment: "node",
  },
});
