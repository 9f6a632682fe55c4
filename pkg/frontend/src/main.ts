/** Single-page review app: pick a reviewer name, walk the queue in server
 * order, record verdicts over the API. Statistics always come from
 * /api/stats; the page never computes agreement numbers itself. */

import { ApiClient, ApiError } from "./api.js";
import { renderItemCard } from "./render.js";
import { ReviewSession, SCORE_LABELS, scoreForKey } from "./session.js";
import { isAlignment, type ItemView } from "./types.js";

const api = new ApiClient();

const app = document.getElementById("app") as HTMLElement;
let session: ReviewSession | null = null;
let reviewer = "";
let pendingCategory: string | null = null;

function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

function banner(message: string, retry?: () => void): HTMLElement {
  const box = document.createElement("div");
  box.className = "banner error";
  const text = document.createElement("span");
  text.textContent = message;
  box.appendChild(text);
  if (retry) {
    const button = document.createElement("button");
    button.textContent = "retry";
    button.addEventListener("click", retry);
    box.appendChild(button);
  }
  return box;
}

function showLogin(): void {
  clear(app);
  const form = document.createElement("form");
  form.className = "login";
  const input = document.createElement("input");
  input.placeholder = "reviewer name";
  input.autofocus = true;
  const button = document.createElement("button");
  button.textContent = "start reviewing";
  form.append(input, button);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const name = input.value.trim();
    if (name) {
      reviewer = name;
      void loadQueue();
    }
  });
  app.appendChild(form);
}

async function loadQueue(): Promise<void> {
  clear(app);
  app.appendChild(Object.assign(document.createElement("p"), { textContent: "loading queue..." }));
  try {
    const items = await api.loadQueue(reviewer);
    session = new ReviewSession(items);
    showCurrent();
  } catch (err) {
    // blocking error banner: no partial queue is ever shown
    clear(app);
    app.appendChild(banner(`could not load the queue: ${describe(err)}`, () => void loadQueue()));
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return err.status === null ? err.message : `HTTP ${err.status}: ${err.message}`;
  return String(err);
}

function showCurrent(): void {
  if (!session) return;
  clear(app);

  const header = document.createElement("div");
  header.className = "header";
  const progress = session.progress();
  header.textContent = session.done
    ? `all done - ${progress.text} rated`
    : `reviewer: ${reviewer} - progress ${progress.text}`;
  app.appendChild(header);

  const item = session.current;
  if (!item || session.done) {
    const done = document.createElement("p");
    done.className = "done";
    done.textContent = session.items.length
      ? "no unrated items left; thank you"
      : "no items in the queue";
    app.appendChild(done);
    return;
  }

  app.appendChild(renderItemCard(item));
  if (isAlignment(item)) {
    app.appendChild(categoryButtons());
  }
  app.appendChild(scoreButtons(item));
  const hint = document.createElement("p");
  hint.className = "hint";
  hint.textContent = "keys 1-5: definitely wrong ... definitely good";
  app.appendChild(hint);
}

function categoryButtons(): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "categories";
  for (const category of ["valid", "invalid", "other_issues"]) {
    const button = document.createElement("button");
    button.textContent = category;
    button.className = pendingCategory === category ? "selected" : "";
    button.addEventListener("click", () => {
      pendingCategory = category;
      showCurrent();
    });
    wrap.appendChild(button);
  }
  return wrap;
}

function scoreButtons(item: ItemView): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "scores";
  for (const { score, label } of SCORE_LABELS) {
    const button = document.createElement("button");
    button.textContent = `${label} (${score})`;
    button.addEventListener("click", () => void submit(item, score));
    wrap.appendChild(button);
  }
  return wrap;
}

async function submit(item: ItemView, score: number): Promise<void> {
  if (!session) return;
  try {
    await api.submitVerdict({
      item: item.id,
      reviewer,
      score,
      ...(isAlignment(item) && pendingCategory ? { category: pendingCategory } : {}),
    });
  } catch (err) {
    // verdict is NOT marked saved; offer an explicit retry
    clear(app);
    app.appendChild(
      banner(`verdict not saved: ${describe(err)}`, () => {
        void submit(item, score);
      }),
    );
    return;
  }
  pendingCategory = null;
  session.recordAndAdvance(item.id, score);
  showCurrent();
}

document.addEventListener("keydown", (event) => {
  if (!session || session.done) return;
  if (event.target instanceof HTMLInputElement) return;
  const score = scoreForKey(event.key);
  const item = session.current;
  if (score !== null && item) void submit(item, score);
});

showLogin();
