// Workspace: topic list (most recent activity first) beside the selected
// topic's detailed timeline. Selection is colour-coded: the chosen topic
// row and the timeline panel share the same blue background.

import { renderTimeline } from "./timeline.js";
import type { TimelineView, TopicSummary } from "./types.js";

export interface WorkspaceHandlers {
  onSelectTopic: (topicId: string) => void;
  onResume: (topicId: string) => void;
  onReissue: (queryEventId: string) => void;
  onRename: (topicId: string, title: string) => void;
}

export function renderWorkspace(
  topics: TopicSummary[],
  view: TimelineView | null,
  handlers: WorkspaceHandlers,
): HTMLElement {
  const root = document.createElement("div");
  root.className = "workspace";

  const list = document.createElement("nav");
  list.className = "topic-list";
  const listTitle = document.createElement("h3");
  listTitle.textContent = "Search topics";
  list.appendChild(listTitle);
  const items = document.createElement("ul");
  for (const topic of topics) {
    items.appendChild(renderTopicRow(topic, view?.topic_id === topic.topic_id, handlers));
  }
  if (topics.length === 0) {
    const empty = document.createElement("p");
    empty.className = "topic-list-empty";
    empty.textContent = "No topics yet — issue a query to start one.";
    list.appendChild(empty);
  }
  list.appendChild(items);
  root.appendChild(list);

  const panel = document.createElement("section");
  panel.className = "workspace-timeline selected";
  const selected = topics.find((topic) => topic.topic_id === view?.topic_id);
  if (view && selected) {
    panel.appendChild(renderPanelHeader(selected, handlers));
    // queries re-issue on click only once the topic is ongoing
    panel.appendChild(
      renderTimeline(view, selected.is_ongoing ? { onReissue: handlers.onReissue } : {}),
    );
  } else {
    const empty = document.createElement("p");
    empty.textContent = "Select a topic to see its timeline.";
    panel.appendChild(empty);
  }
  root.appendChild(panel);
  return root;
}

function renderTopicRow(
  topic: TopicSummary,
  isSelected: boolean,
  handlers: WorkspaceHandlers,
): HTMLElement {
  const li = document.createElement("li");
  li.className = "topic-row";
  li.dataset.topicId = topic.topic_id;
  if (isSelected) li.classList.add("selected");

  const button = document.createElement("button");
  button.type = "button";
  button.className = "topic-title";
  button.textContent = topic.title;
  button.addEventListener("click", () => handlers.onSelectTopic(topic.topic_id));
  li.appendChild(button);

  if (topic.is_ongoing) {
    const badge = document.createElement("span");
    badge.className = "ongoing-badge";
    badge.textContent = "ongoing topic";
    li.appendChild(badge);
  }
  return li;
}

function renderPanelHeader(topic: TopicSummary, handlers: WorkspaceHandlers): HTMLElement {
  const header = document.createElement("header");
  header.className = "workspace-header";

  const title = document.createElement("h2");
  title.className = "workspace-title";
  title.textContent = topic.title;
  header.appendChild(title);
  if (topic.is_ongoing) {
    const badge = document.createElement("span");
    badge.className = "ongoing-badge";
    badge.textContent = "ongoing topic";
    header.appendChild(badge);
  } else {
    const resume = document.createElement("button");
    resume.type = "button";
    resume.className = "resume-button";
    resume.textContent = "Resume";
    resume.title = "Make this the ongoing topic";
    resume.addEventListener("click", () => handlers.onResume(topic.topic_id));
    header.appendChild(resume);
  }

  const renameForm = document.createElement("form");
  renameForm.className = "rename-form";
  const input = document.createElement("input");
  input.type = "text";
  input.className = "rename-input";
  input.value = topic.title;
  input.setAttribute("aria-label", "Topic title");
  const submit = document.createElement("button");
  submit.type = "submit";
  submit.textContent = "Rename";
  renameForm.append(input, submit);
  renameForm.addEventListener("submit", (event) => {
    event.preventDefault();
    if (input.value.trim()) handlers.onRename(topic.topic_id, input.value);
  });
  header.appendChild(renameForm);
  return header;
}
