/** DOM construction for one review item. Pure projection of the API
 * payload: nothing here mutates or reinterprets what the server sent. */

import { isAlignment, type ConflationPayload, type ItemView } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderItemCard(item: ItemView): HTMLElement {
  const card = el("div", "item-card");
  card.appendChild(el("div", "item-kind", item.kind));

  if (isAlignment(item)) {
    const payload = item.payload;
    const link = el("a", "target-link", payload.node);
    link.href = payload.node;
    link.target = "_blank";
    link.rel = "noopener noreferrer";
    card.appendChild(link);
    card.appendChild(el("div", "tactic", `tactic ${payload.tactic} (${payload.evidence})`));
  } else {
    const payload = item.payload as ConflationPayload;
    card.appendChild(el("div", "cluster-iri", payload.cluster));
    const table = el("table", "label-table");
    const head = el("tr");
    for (const caption of ["label", "mean sim", "std"]) {
      head.appendChild(el("th", undefined, caption));
    }
    table.appendChild(head);
    for (const row of payload.per_label) {
      const tr = el("tr");
      tr.appendChild(el("td", "label-text", row.label));
      tr.appendChild(el("td", "num", row.mean_sim.toFixed(3)));
      tr.appendChild(el("td", "num", row.std_sim.toFixed(3)));
      table.appendChild(tr);
    }
    card.appendChild(table);
    card.appendChild(
      el(
        "div",
        "cluster-stats",
        `cluster mean ${payload.cluster_mean.toFixed(3)}, std ${payload.cluster_std.toFixed(3)}, n=${payload.n}`,
      ),
    );
  }

  if (item.existing_verdict !== null) {
    card.appendChild(el("div", "already-rated", `rated: ${item.existing_verdict}`));
  }
  return card;
}
