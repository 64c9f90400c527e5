// Application shell: holds the ViewState, routes between the SERP and the
// workspace, and re-renders strictly from server responses (no optimistic
// updates, so every view is reproducible from the API alone).

import { ApiClient, ApiError } from "./api.js";
import { renderSerp } from "./serp.js";
import { renderWorkspace } from "./workspace.js";
import type { SerpHit, SerpResponse, TimelineView, TopicSummary } from "./types.js";

export interface ViewState {
  userId: string | null;
  activePage: "serp" | "workspace";
  lastSerp: SerpResponse | null;
  selectedTopicId: string | null;
  timeline: TimelineView | null;
  topics: TopicSummary[];
  pendingQuery: string;
}

const USER_KEY = "searchtrail.user_id";

export class App {
  state: ViewState = {
    userId: null,
    activePage: "serp",
    lastSerp: null,
    selectedTopicId: null,
    timeline: null,
    topics: [],
    pendingQuery: "",
  };

  private root!: HTMLElement;
  private main!: HTMLElement;
  private banner!: HTMLElement;
  private queryPanel!: HTMLElement;
  private queryInput!: HTMLInputElement;

  constructor(
    private api: ApiClient,
    options: { userId?: string } = {},
  ) {
    if (options.userId) this.state.userId = options.userId;
  }

  // -- lifecycle -----------------------------------------------------

  mount(root: HTMLElement): void {
    this.root = root;
    root.replaceChildren();
    root.appendChild(this.buildChrome());
    this.main = root.querySelector(".main") as HTMLElement;
    this.banner = root.querySelector(".error-banner") as HTMLElement;
    this.queryPanel = root.querySelector(".query-panel") as HTMLElement;
    this.queryInput = root.querySelector(".query-input") as HTMLInputElement;
    this.render();
  }

  async start(): Promise<void> {
    if (!this.state.userId) {
      const stored = window.localStorage.getItem(USER_KEY);
      if (stored) {
        this.state.userId = stored;
      } else {
        const { user_id } = await this.api.createUser();
        this.state.userId = user_id;
        window.localStorage.setItem(USER_KEY, user_id);
      }
    }
    this.render();
  }

  private buildChrome(): HTMLElement {
    const wrap = document.createElement("div");
    wrap.className = "app";

    const bar = document.createElement("header");
    bar.className = "top-bar";
    const brand = document.createElement("span");
    brand.className = "brand";
    brand.textContent = "searchtrail";

    const searchButton = document.createElement("button");
    searchButton.type = "button";
    searchButton.className = "search-button";
    searchButton.textContent = "Search";
    searchButton.addEventListener("click", () => this.toggleQueryPanel());

    const workspaceButton = document.createElement("button");
    workspaceButton.type = "button";
    workspaceButton.className = "workspace-button";
    workspaceButton.textContent = "Workspace";
    workspaceButton.addEventListener("click", () => void this.openWorkspace());

    bar.append(brand, searchButton, workspaceButton);
    wrap.appendChild(bar);

    // collapsed by default; the Search button expands it
    const panel = document.createElement("form");
    panel.className = "query-panel hidden";
    const input = document.createElement("input");
    input.type = "search";
    input.className = "query-input";
    input.placeholder = "Search the catalog…";
    input.addEventListener("input", () => {
      this.state.pendingQuery = input.value;
    });
    const go = document.createElement("button");
    go.type = "submit";
    go.textContent = "Go";
    panel.append(input, go);
    panel.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitQuery(input.value);
    });
    wrap.appendChild(panel);

    const banner = document.createElement("div");
    banner.className = "error-banner hidden";
    banner.setAttribute("role", "alert");
    wrap.appendChild(banner);

    const main = document.createElement("main");
    main.className = "main";
    wrap.appendChild(main);
    return wrap;
  }

  private toggleQueryPanel(): void {
    this.queryPanel.classList.toggle("hidden");
    if (!this.queryPanel.classList.contains("hidden")) this.queryInput.focus();
  }

  // -- actions ------------------------------------------------------------

  async submitQuery(text: string, newTopic = false): Promise<void> {
    if (!this.state.userId || !text.trim()) return;
    await this.guard(async () => {
      const serp = await this.api.submitQuery(this.state.userId as string, text, newTopic);
      this.state.lastSerp = serp;
      this.state.activePage = "serp";
      this.state.pendingQuery = "";
      this.queryInput.value = "";
      this.queryPanel.classList.add("hidden");
    });
  }

  async toggleSave(hit: SerpHit, currentlySaved: boolean): Promise<void> {
    const serp = this.state.lastSerp;
    if (!serp) return;
    const topicId = serp.overview.topic_id;
    await this.guard(async () => {
      const overview = currentlySaved
        ? await this.api.removeResult(topicId, hit.resource_id)
        : await this.api.saveResult(topicId, serp.query_event_id, hit.resource_id);
      this.state.lastSerp = { ...serp, overview };
    });
  }

  async openWorkspace(topicId?: string): Promise<void> {
    if (!this.state.userId) return;
    await this.guard(async () => {
      const { topics } = await this.api.listTopics(this.state.userId as string);
      this.state.topics = topics;
      const chosen =
        topicId ??
        this.state.selectedTopicId ??
        topics.find((t) => t.is_ongoing)?.topic_id ??
        topics[0]?.topic_id ??
        null;
      this.state.selectedTopicId = chosen;
      this.state.timeline = chosen ? await this.api.fetchTimeline(chosen, "detailed") : null;
      this.state.activePage = "workspace";
    });
  }

  async selectTopic(topicId: string): Promise<void> {
    await this.guard(async () => {
      this.state.timeline = await this.api.fetchTimeline(topicId, "detailed");
      this.state.selectedTopicId = topicId;
    });
  }

  async resumeTopic(topicId: string): Promise<void> {
    if (!this.state.userId) return;
    await this.guard(async () => {
      await this.api.resumeTopic(this.state.userId as string, topicId);
    });
    await this.openWorkspace(topicId);
  }

  async reissue(queryEventId: string): Promise<void> {
    const topicId = this.state.selectedTopicId;
    if (!topicId) return;
    await this.guard(async () => {
      const serp = await this.api.reissueQuery(topicId, queryEventId);
      this.state.lastSerp = serp;
      this.state.activePage = "serp";
    });
  }

  async renameTopic(topicId: string, title: string): Promise<void> {
    await this.guard(async () => {
      await this.api.renameTopic(topicId, title);
    });
    await this.openWorkspace(topicId);
  }

  // -- rendering -------------------------------------------------------------

  render(): void {
    this.main.replaceChildren();
    if (this.state.activePage === "serp") {
      if (this.state.lastSerp) {
        this.main.appendChild(
          renderSerp(this.state.lastSerp, {
            onToggleSave: (hit, saved) => void this.toggleSave(hit, saved),
          }),
        );
      } else {
        const welcome = document.createElement("p");
        welcome.className = "welcome";
        welcome.textContent = "Use the Search button above to query the catalog.";
        this.main.appendChild(welcome);
      }
    } else {
      this.main.appendChild(
        renderWorkspace(this.state.topics, this.state.timeline, {
          onSelectTopic: (topicId) => void this.selectTopic(topicId),
          onResume: (topicId) => void this.resumeTopic(topicId),
          onReissue: (queryEventId) => void this.reissue(queryEventId),
          onRename: (topicId, title) => void this.renameTopic(topicId, title),
        }),
      );
    }
  }

  // Run an action; on API failure show the banner and keep state untouched.
  private async guard(action: () => Promise<void>): Promise<void> {
    try {
      await action();
      this.banner.classList.add("hidden");
      this.banner.textContent = "";
    } catch (error) {
      const message =
        error instanceof ApiError
          ? error.code === "not_ongoing"
            ? `${error.message} — resume the topic to keep working on it.`
            : error.message
          : "The service could not be reached.";
      this.banner.textContent = message;
      this.banner.classList.remove("hidden");
    }
    this.render();
  }
}
