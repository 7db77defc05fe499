import { SpellApi } from "./api.js";
import { App } from "./ui.js";

const api = new SpellApi("");
const app = App.fromDocument(api, document);
void app.resumeFromHash();
