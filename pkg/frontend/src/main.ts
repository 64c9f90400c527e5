import { ApiClient } from "./api.js";
import { App } from "./app.js";

declare global {
  interface Window {
    SEARCHTRAIL_API?: string;
  }
}

function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? window.SEARCHTRAIL_API ?? "";
}

const app = new App(new ApiClient({ baseUrl: apiBase() }));
app.mount(document.getElementById("app") as HTMLElement);
void app.start();
