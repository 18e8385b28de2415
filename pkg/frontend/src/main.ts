/**
 * Bootstrap: mount the wizard on #app. The API origin defaults to the
 * page's own; override with ?api=http://host:port when the page is served
 * separately from the service. ?session=<id> fixes the session id.
 */

import { ApiClient } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(window.location.search);
const api = new ApiClient(params.get("api") ?? "");
const root = document.getElementById("app");

if (root !== null) {
  const sessionId = params.get("session");
  void new App(root, api, sessionId === null ? {} : { sessionId }).start();
}
