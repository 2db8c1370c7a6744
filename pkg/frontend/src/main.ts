import { ApiClient } from "./api.js";
import { App } from "./app.js";
import { render } from "./render.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

const app = new App(new ApiClient(""));
app.onChange = () => render(root, app);
app.start().catch((err) => {
  root.textContent = `failed to reach the session service: ${err}`;
});
