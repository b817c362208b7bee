import { defineConfig } from "vitest/config";

// every rpc call spawns a Python process; allow for interpreter startup
export default defineConfig({
  test: {
    testTimeout: 180_000,
    hookTimeout: 60_000,
  },
});
