import { WorkbenchClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const app = new App(root, new WorkbenchClient(""));
  void app.start();
}
