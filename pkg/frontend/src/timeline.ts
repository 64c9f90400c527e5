// Vertical activity timeline: sessions (newest first) containing query
// boxes, each bounding the results saved from that query. Connector lines
// tie every save entry back to its query box; removed entries stay in
// place, struck through and desaturated.

import { formatWhen, iconFor } from "./icons.js";
import type { QueryGroup, SaveEntry, SessionGroup, TimelineView } from "./types.js";

export interface TimelineOptions {
  // When set, query boxes become clickable and re-issue the query.
  onReissue?: (queryEventId: string) => void;
}

export function renderTimeline(view: TimelineView, options: TimelineOptions = {}): HTMLElement {
  const root = document.createElement("div");
  root.className = `timeline timeline-${view.detail}`;
  root.dataset.topicId = view.topic_id;
  for (const session of view.sessions) {
    root.appendChild(renderSession(session, view.detail, options));
  }
  if (view.sessions.length === 0) {
    const empty = document.createElement("p");
    empty.className = "timeline-empty";
    empty.textContent = "No activity yet.";
    root.appendChild(empty);
  }
  return root;
}

function renderSession(
  session: SessionGroup,
  detail: TimelineView["detail"],
  options: TimelineOptions,
): HTMLElement {
  const el = document.createElement("section");
  el.className = "session-group";
  const header = document.createElement("header");
  header.className = "session-span";
  const sameInstant = session.start_at === session.end_at;
  header.textContent = sameInstant
    ? formatWhen(session.start_at)
    : `${formatWhen(session.start_at)} – ${formatWhen(session.end_at)}`;
  el.appendChild(header);
  for (const group of session.query_groups) {
    el.appendChild(renderQueryGroup(group, detail, options));
  }
  return el;
}

function renderQueryGroup(
  group: QueryGroup,
  detail: TimelineView["detail"],
  options: TimelineOptions,
): HTMLElement {
  const box = document.createElement("div");
  box.className = "query-group"; // the bounding box around query + saves
  box.dataset.queryId = group.query_event_id;

  const query = document.createElement(options.onReissue ? "button" : "div");
  query.className = "query-box";
  if (options.onReissue) {
    query.classList.add("clickable");
    (query as HTMLButtonElement).type = "button";
    query.addEventListener("click", () => options.onReissue?.(group.query_event_id));
    query.title = "Re-issue this query";
  }
  const text = document.createElement("span");
  text.className = "query-text";
  text.textContent = group.query_text;
  const when = document.createElement("time");
  when.className = "query-time";
  when.textContent = formatWhen(group.issued_at);
  query.append(text, when);
  box.appendChild(query);

  const saves = document.createElement("ul");
  saves.className = "saves";
  for (const entry of group.saves) {
    saves.appendChild(renderSaveEntry(entry, group.query_event_id, detail));
  }
  box.appendChild(saves);
  return box;
}

function renderSaveEntry(
  entry: SaveEntry,
  queryEventId: string,
  detail: TimelineView["detail"],
): HTMLElement {
  const li = document.createElement("li");
  li.className = "save-entry";
  li.dataset.saveId = entry.save_event_id;
  li.dataset.queryId = queryEventId; // the connector's target
  if (entry.removed) li.classList.add("removed");

  const connector = document.createElement("span");
  connector.className = "connector";
  connector.setAttribute("aria-hidden", "true");

  const icon = document.createElement("span");
  icon.className = "save-icon";
  icon.textContent = iconFor(entry.resource_type);
  icon.title = entry.resource_type;

  const body = document.createElement("span");
  body.className = "save-body";
  const title = document.createElement("span");
  title.className = "save-title";
  title.textContent = entry.title;
  const when = document.createElement("time");
  when.className = "save-time";
  when.textContent = formatWhen(entry.saved_at);
  body.append(title, when);

  li.append(connector, icon, body);
  if (detail === "detailed" && entry.card) {
    const card = document.createElement("div");
    card.className = "save-card";
    const authors = document.createElement("span");
    authors.className = "card-authors";
    authors.textContent = entry.card.authors.join(", ");
    const year = document.createElement("span");
    year.className = "card-year";
    year.textContent = entry.card.year === null ? "" : String(entry.card.year);
    card.append(authors, year);
    if (entry.card.description) {
      const description = document.createElement("p");
      description.className = "card-description";
      description.textContent = entry.card.description;
      card.appendChild(description);
    }
    li.appendChild(card);
  }
  return li;
}

// Resources with a live (non-removed) entry anywhere in the view; used to
// derive save/remove toggle state from server responses alone.
export function activeSaveIds(view: TimelineView): Set<string> {
  const active = new Set<string>();
  for (const session of view.sessions) {
    for (const group of session.query_groups) {
      for (const entry of group.saves) {
        if (!entry.removed) active.add(entry.resource_id);
      }
    }
  }
  return active;
}
