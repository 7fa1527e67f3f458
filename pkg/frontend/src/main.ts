import { ApiClient } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? "";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

const app = new App(root, new ApiClient(apiBase));
void app.init();
