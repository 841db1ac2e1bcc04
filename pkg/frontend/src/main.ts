/**
 * Workspace controller.
 *
 * Owns the single mutable view state (the latest session response) and a
 * busy flag that serializes mutations: each state-changing interaction maps
 * to exactly one HTTP call, and the next one is accepted only after the
 * response has been rendered. Responses replace the state wholesale — the
 * engine is the single source of truth, and the workspace region is rebuilt
 * from the response without reloading the page.
 *
 * Error policy: composer preconditions and server 4xx on assertions surface
 * inline on the form; every other failure lands in the non-blocking banner
 * and leaves the current state untouched.
 */

import { ApiClient, ApiError } from "./api.js";
import type { SessionView } from "./api.js";
import { layoutGraph } from "./graph.js";
import {
  renderArgumentCards,
  renderAssertionComposer,
  renderAssertionLog,
  renderCaseList,
  renderGraphPanel,
  renderLogLink,
  renderNotes,
  renderProblemPanel,
  renderSuggestions,
} from "./render.js";
import { assertionRequestFrom, problemFrom, validateAssertionForm } from "./state.js";
import type { AssertionForm } from "./state.js";

const SHELL = `
  <header class="top">
    <h1>Case-frame workspace</h1>
    <p id="banner" class="banner" hidden></p>
  </header>
  <div class="columns">
    <aside id="sidebar">
      <div id="case-list-slot"></div>
      <section class="panel">
        <h2>Add a case</h2>
        <form id="case-form" data-action="add-case">
          <textarea name="frame" rows="6" placeholder='{"caseData": …}'></textarea>
          <button type="submit">POST case</button>
          <p class="form-error" id="case-error" role="alert"></p>
        </form>
      </section>
      <section class="panel">
        <h2>New problem</h2>
        <form id="problem-form" data-action="create-session">
          <label>Jurisdiction <input name="jurisdiction" required></label>
          <label>Court <input name="court" required></label>
          <label>As-of date <input name="asOfDate" placeholder="YYYY-MM-DD" required></label>
          <label>Expression <input name="expression" required></label>
          <label>Locus <input name="locus"></label>
          <label>Extra slots (JSON) <textarea name="extras" rows="2" placeholder="{}"></textarea></label>
          <button type="submit">Start session</button>
          <p class="form-error" id="problem-error" role="alert"></p>
        </form>
      </section>
    </aside>
    <main id="workspace">
      <p class="muted">Start a session to synthesize arguments.</p>
    </main>
  </div>
`;

export class App {
  readonly doc: Document;
  readonly root: HTMLElement;
  readonly client: ApiClient;
  state: SessionView | null = null;
  busy = false;

  constructor(doc: Document, root: HTMLElement, client: ApiClient) {
    this.doc = doc;
    this.root = root;
    this.client = client;
  }

  /** Render the static shell, load the case list, and wire event delegation. */
  async start(): Promise<void> {
    this.root.innerHTML = SHELL;
    this.root.addEventListener("submit", (event) => {
      const form = event.target as HTMLFormElement;
      event.preventDefault();
      const action = form.dataset.action;
      if (action === "create-session") {
        void this.createSessionFromForm(form);
      } else if (action === "assert") {
        void this.submitAssertion(form);
      } else if (action === "add-case") {
        void this.addCaseFromForm(form);
      }
    });
    this.root.addEventListener("click", (event) => {
      const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action=transfer]");
      if (target?.dataset.argumentId) {
        void this.applyTransfer(target.dataset.argumentId);
      }
    });
    await this.refreshCases();
  }

  setBanner(message: string | null): void {
    const banner = this.root.querySelector<HTMLElement>("#banner");
    if (!banner) {
      return;
    }
    if (message === null) {
      banner.hidden = true;
      banner.textContent = "";
    } else {
      banner.hidden = false;
      banner.textContent = message;
    }
  }

  /** Serialize mutations: at most one in flight, others ignored until done. */
  private async run(mutation: () => Promise<void>): Promise<void> {
    if (this.busy) {
      return;
    }
    this.busy = true;
    this.root.classList.add("busy");
    try {
      await mutation();
    } finally {
      this.busy = false;
      this.root.classList.remove("busy");
    }
  }

  async refreshCases(): Promise<void> {
    try {
      const cases = await this.client.listCases();
      const slot = this.root.querySelector("#case-list-slot");
      if (slot) {
        slot.replaceChildren(renderCaseList(this.doc, cases));
      }
    } catch (err) {
      this.setBanner(err instanceof ApiError ? err.message : String(err));
    }
  }

  /** Rebuild the workspace region from the current state. No page reload. */
  renderWorkspace(): void {
    const workspace = this.root.querySelector<HTMLElement>("#workspace");
    if (!workspace || !this.state) {
      return;
    }
    const state = this.state;
    const layout = layoutGraph(state.arguments, state.defeats);
    workspace.replaceChildren(
      renderProblemPanel(this.doc, state),
      renderNotes(this.doc, state.notes),
      renderSuggestions(this.doc, state.pendingCQSuggestions),
      renderGraphPanel(this.doc, layout, state),
      renderArgumentCards(this.doc, state),
      renderAssertionComposer(this.doc, state),
      renderAssertionLog(this.doc, state.assertions),
      renderLogLink(this.doc, this.client.logUrl(state.sessionId)),
    );
  }

  private applyState(state: SessionView): void {
    this.state = state;
    this.setBanner(null);
    this.renderWorkspace();
  }

  private formError(id: string, message: string): void {
    const slot = this.root.querySelector<HTMLElement>(`#${id}`);
    if (slot) {
      slot.textContent = message;
    }
  }

  async createSessionFromForm(form: HTMLFormElement): Promise<void> {
    await this.run(async () => {
      const data = new FormData(form);
      const problem = problemFrom({
        jurisdiction: String(data.get("jurisdiction") ?? ""),
        court: String(data.get("court") ?? ""),
        asOfDate: String(data.get("asOfDate") ?? ""),
        expression: String(data.get("expression") ?? ""),
        locus: String(data.get("locus") ?? ""),
      });
      const extras = String(data.get("extras") ?? "").trim();
      if (extras !== "") {
        try {
          Object.assign(problem, JSON.parse(extras) as Record<string, unknown>);
        } catch {
          this.formError("problem-error", "extra slots must be valid JSON");
          return;
        }
      }
      this.formError("problem-error", "");
      try {
        this.applyState(await this.client.createSession(problem));
      } catch (err) {
        if (err instanceof ApiError) {
          this.formError("problem-error", err.message);
        } else {
          this.setBanner(String(err));
        }
      }
    });
  }

  async submitAssertion(form: HTMLFormElement): Promise<void> {
    if (!this.state) {
      return;
    }
    const data = new FormData(form);
    const fields: AssertionForm = {
      cq: String(data.get("cq") ?? ""),
      targetArgumentId: String(data.get("targetArgumentId") ?? ""),
      payload: String(data.get("payload") ?? ""),
      counterTo: String(data.get("counterTo") ?? ""),
    };
    const problem = validateAssertionForm(fields);
    if (problem !== null) {
      this.formError("assertion-error", problem);
      return;
    }
    await this.run(async () => {
      try {
        const state = await this.client.postAssertion(
          this.state!.sessionId,
          assertionRequestFrom(fields),
        );
        this.applyState(state);
      } catch (err) {
        if (err instanceof ApiError && err.status >= 400 && err.status < 500) {
          this.formError("assertion-error", err.message);
        } else {
          this.setBanner(String(err));
        }
      }
    });
  }

  async applyTransfer(argumentId: string): Promise<void> {
    if (!this.state) {
      return;
    }
    await this.run(async () => {
      try {
        this.applyState(await this.client.postTransfer(this.state!.sessionId, argumentId));
      } catch (err) {
        this.setBanner(err instanceof ApiError ? err.message : String(err));
      }
    });
  }

  async addCaseFromForm(form: HTMLFormElement): Promise<void> {
    await this.run(async () => {
      const raw = String(new FormData(form).get("frame") ?? "");
      let frame: Record<string, unknown>;
      try {
        frame = JSON.parse(raw) as Record<string, unknown>;
      } catch {
        this.formError("case-error", "case frame must be valid JSON");
        return;
      }
      this.formError("case-error", "");
      try {
        const summary = await this.client.postCase(frame);
        this.setBanner(`case ${summary.identifier} added`);
        await this.refreshCases();
      } catch (err) {
        if (err instanceof ApiError) {
          this.formError("case-error", err.message);
        } else {
          this.setBanner(String(err));
        }
      }
    });
  }
}

/** Build the app over the element with id "app". */
export function init(doc: Document, client: ApiClient): App {
  const root = doc.getElementById("app");
  if (!root) {
    throw new Error('missing mount point: <div id="app">');
  }
  return new App(doc, root, client);
}
