/** Bootstrap and hash router. Routes:
 *    #/               Discover (state in the fragment query)
 *    #/incident/<n>   incident detail with citation
 *    #/submit         submission form
 *    #/leaderboard    static leaderboards view
 *    #/topwords       static top-words view
 */

import { ApiClient, DraftFields } from "./api.js";
import { DiscoverController } from "./discover.js";
import {
  DomDiscoverView,
  el,
  renderIncidentPage,
  renderLeaderboards,
  renderNotFound,
  renderTopWords,
} from "./dom.js";
import { loadIncidentPage, loadLeaderboardPage, loadTopWordsPage, submitDraft } from "./pages.js";

const api = new ApiClient("");
let suppressHashEvent = false;

function setHash(hash: string): void {
  if (location.hash === hash) return;
  suppressHashEvent = true;
  history.replaceState(null, "", hash);
}

async function showDiscover(root: HTMLElement): Promise<void> {
  root.replaceChildren();

  const searchBox = el("input", "search-box") as HTMLInputElement;
  searchBox.type = "search";
  searchBox.placeholder = "Search incident reports…";
  searchBox.autofocus = true;

  const body = el("div");
  root.append(searchBox, body);

  const controller = new DiscoverController(
    api,
    new DomDiscoverView(body, {
      onToggleFacet: (key, value) => void controller.toggleFacet(key, value),
      onPage: (page) => void controller.setPage(page),
    }),
    setHash,
  );
  searchBox.addEventListener("input", () => void controller.handleInput(searchBox.value));
  await controller.restore(location.hash);
  searchBox.value = controller.state.q;
}

async function showIncident(root: HTMLElement, number: number): Promise<void> {
  const page = await loadIncidentPage(api, number);
  if (page.kind === "not-found") {
    renderNotFound(root, page.message);
  } else {
    renderIncidentPage(root, page.incident);
  }
}

function showSubmit(root: HTMLElement): void {
  root.replaceChildren();
  const form = el("form", "submit-form");
  form.appendChild(el("h2", undefined, "Submit an incident report"));

  const fields: [keyof DraftFields | "submitter", string, string][] = [
    ["url", "Report URL", "https://…"],
    ["title", "Title", ""],
    ["source", "Publication", ""],
    ["authors", "Authors (comma separated)", ""],
    ["datePublished", "Publication date", "YYYY-MM-DD"],
    ["incidentDate", "Incident date (optional)", "YYYY-MM-DD"],
    ["submitter", "Your name", ""],
  ];
  const inputs = new Map<string, HTMLInputElement>();
  const errorSlots = new Map<string, HTMLElement>();
  for (const [name, label, placeholder] of fields) {
    const row = el("label", "form-row");
    row.appendChild(el("span", "form-label", label));
    const input = el("input") as HTMLInputElement;
    input.name = name;
    input.placeholder = placeholder;
    row.appendChild(input);
    const slot = el("span", "field-error hidden");
    row.appendChild(slot);
    inputs.set(name, input);
    errorSlots.set(name, slot);
    form.appendChild(row);
  }
  const textRow = el("label", "form-row");
  textRow.appendChild(el("span", "form-label", "Full report text"));
  const textArea = el("textarea", "draft-text") as HTMLTextAreaElement;
  textArea.rows = 10;
  textRow.appendChild(textArea);
  const textError = el("span", "field-error hidden");
  textRow.appendChild(textError);
  errorSlots.set("text", textError);
  form.appendChild(textRow);

  const submitButton = el("button", "submit-button", "Submit for review");
  submitButton.type = "submit";
  const outcome = el("div", "submit-outcome");
  form.append(submitButton, outcome);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
      for (const slot of errorSlots.values()) {
        slot.classList.add("hidden");
        slot.textContent = "";
      }
      const value = (name: string) => inputs.get(name)?.value.trim() ?? "";
      const draft: DraftFields = {
        url: value("url"),
        title: value("title"),
        source: value("source"),
        authors: value("authors") ? value("authors").split(",").map((a) => a.trim()) : [],
        datePublished: value("datePublished"),
        incidentDate: value("incidentDate") || null,
        text: textArea.value,
      };
      const result = await submitDraft(api, draft, value("submitter"));
      outcome.replaceChildren();
      if (result.ok && result.submission) {
        outcome.appendChild(el("p", "submit-ok", result.message));
        if (result.submission.candidates.length > 0) {
          outcome.appendChild(
            el("p", undefined, "Possibly the same incident as:"),
          );
          const list = el("ul", "candidate-list");
          for (const candidate of result.submission.candidates) {
            const item = el("li");
            const link = el(
              "a",
              undefined,
              `Incident ${candidate.incidentNumber} (similarity ${candidate.score.toFixed(2)})`,
            );
            link.href = `#/incident/${candidate.incidentNumber}`;
            item.appendChild(link);
            list.appendChild(item);
          }
          outcome.appendChild(list);
        }
      } else {
        for (const field of result.fieldErrors) {
          const slot = errorSlots.get(field);
          if (slot) {
            slot.textContent = "required";
            slot.classList.remove("hidden");
          }
        }
        outcome.appendChild(el("p", "submit-failed", result.message));
      }
    })();
  });
  root.appendChild(form);
}

async function route(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) return;
  const hash = location.hash || "#/";
  const incidentMatch = /^#\/incident\/(\d+)/.exec(hash);
  try {
    if (incidentMatch) {
      await showIncident(root, Number(incidentMatch[1]));
    } else if (hash.startsWith("#/submit")) {
      showSubmit(root);
    } else if (hash.startsWith("#/leaderboard")) {
      renderLeaderboards(root, await loadLeaderboardPage(api));
    } else if (hash.startsWith("#/topwords")) {
      renderTopWords(root, await loadTopWordsPage(api));
    } else if (hash.startsWith("#/")) {
      await showDiscover(root);
    } else {
      renderNotFound(root, "There is no such page.");
    }
  } catch (error) {
    renderNotFound(root, error instanceof Error ? error.message : String(error));
  }
}

window.addEventListener("hashchange", () => {
  if (suppressHashEvent) {
    suppressHashEvent = false;
    return;
  }
  void route();
});

void route();
