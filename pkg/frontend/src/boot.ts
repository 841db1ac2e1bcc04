/** Browser entry point: mount the app on the page served under /ui. */

import { ApiClient } from "./api.js";
import { init } from "./main.js";

const app = init(document, new ApiClient(""));
void app.start();
