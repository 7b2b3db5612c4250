import { App } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const app = new App(root, "");
  app.init().catch((error) => {
    root.textContent = `Failed to start: ${String(error)}`;
  });
}
