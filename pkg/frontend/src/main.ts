/** Browser entry point; resolve the API base and mount the app. */

import { QuestionnaireApp } from "./app.js";

function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  if (fromQuery) return fromQuery;
  return "http://127.0.0.1:8000";
}

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

const app = new QuestionnaireApp(root, {
  apiBase: apiBase(),
  frameworkId: "ers-v1",
  examplesBase: "./examples",
});
void app.start();
