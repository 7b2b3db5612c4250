import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    testTimeout: 30000,
    hookTimeout: 45000,
    // Each end-to-end file spawns its own API server process; run files
    // sequentially so they never race on ports or CPU.
    fileParallelism: false,
  },
});
