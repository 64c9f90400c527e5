// Search results page: result cards on the left, the overview timeline in
// a panel to the right. Each card carries a save/remove toggle that acts
// on the ongoing topic.

import { iconFor } from "./icons.js";
import { activeSaveIds, renderTimeline } from "./timeline.js";
import type { SerpHit, SerpResponse } from "./types.js";

export interface SerpHandlers {
  onToggleSave: (hit: SerpHit, currentlySaved: boolean) => void;
}

export function renderSerp(serp: SerpResponse, handlers: SerpHandlers): HTMLElement {
  const root = document.createElement("div");
  root.className = "serp";

  const results = document.createElement("section");
  results.className = "results";
  const heading = document.createElement("h2");
  heading.className = "results-heading";
  heading.textContent =
    serp.page.total_hits === 0
      ? `No results for “${serp.page.query_text}”`
      : `${serp.page.total_hits} result${serp.page.total_hits === 1 ? "" : "s"} for “${serp.page.query_text}”`;
  results.appendChild(heading);

  const saved = activeSaveIds(serp.overview);
  for (const hit of serp.page.hits) {
    results.appendChild(renderResultCard(hit, saved.has(hit.resource_id), handlers));
  }
  root.appendChild(results);

  const panel = document.createElement("aside");
  panel.className = "overview-panel";
  const panelTitle = document.createElement("h3");
  panelTitle.textContent = "Search activity";
  panel.appendChild(panelTitle);
  // overview queries are deliberately not clickable; re-issue lives in the workspace
  panel.appendChild(renderTimeline(serp.overview));
  root.appendChild(panel);
  return root;
}

function renderResultCard(hit: SerpHit, currentlySaved: boolean, handlers: SerpHandlers): HTMLElement {
  const card = document.createElement("article");
  card.className = "result-card";
  card.dataset.resourceId = hit.resource_id;

  const cover = document.createElement("div");
  cover.className = "cover";
  if (hit.cover_ref) {
    const img = document.createElement("img");
    img.src = hit.cover_ref;
    img.alt = "";
    cover.appendChild(img);
  } else {
    cover.textContent = iconFor(hit.resource_type);
  }

  const body = document.createElement("div");
  body.className = "card-body";
  const title = document.createElement("h4");
  title.className = "card-title";
  title.textContent = hit.title;
  const meta = document.createElement("p");
  meta.className = "card-meta";
  meta.textContent = [hit.authors.join(", "), hit.year ?? ""].filter(Boolean).join(" · ");
  body.append(title, meta);
  if (hit.description) {
    const description = document.createElement("p");
    description.className = "card-description";
    description.textContent = hit.description;
    body.appendChild(description);
  }

  const toggle = document.createElement("button");
  toggle.type = "button";
  toggle.className = "save-toggle";
  toggle.classList.toggle("saved", currentlySaved);
  toggle.textContent = currentlySaved ? "Remove from workspace" : "Save to workspace";
  toggle.addEventListener("click", () => handlers.onToggleSave(hit, currentlySaved));

  card.append(cover, body, toggle);
  return card;
}
