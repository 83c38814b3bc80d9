import { App } from "./app";
import { ServiceClient } from "./api";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
new App(root, new ServiceClient());
