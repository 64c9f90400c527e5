// Thin fetch client for the searchtrail API.

import type { SerpResponse, TimelineView, TopicSummary } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export interface ApiClientOptions {
  baseUrl?: string;
  fetchImpl?: typeof fetch;
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "io_error";
  let message = `request failed with status ${response.status}`;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    if (body.code) code = body.code;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep defaults
  }
  return new ApiError(response.status, code, message);
}

export class ApiClient {
  private baseUrl: string;
  private fetchImpl: typeof fetch;

  constructor(options: ApiClientOptions = {}) {
    this.baseUrl = (options.baseUrl ?? "").replace(/\/$/, "");
    this.fetchImpl = options.fetchImpl ?? fetch.bind(globalThis);
  }

  private async request<T>(method: string, path: string, payload?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: payload === undefined ? {} : { "content-type": "application/json" },
      body: payload === undefined ? undefined : JSON.stringify(payload),
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  createUser(): Promise<{ user_id: string }> {
    return this.request("POST", "/api/users");
  }

  submitQuery(userId: string, text: string, newTopic = false): Promise<SerpResponse> {
    const body: Record<string, unknown> = { text };
    if (newTopic) body.new_topic = true;
    return this.request("POST", `/api/users/${userId}/queries`, body);
  }

  reissueQuery(topicId: string, queryEventId: string): Promise<SerpResponse> {
    return this.request("POST", `/api/topics/${topicId}/queries/${queryEventId}/reissue`, {});
  }

  saveResult(topicId: string, queryEventId: string, resourceId: string): Promise<TimelineView> {
    return this.request("POST", `/api/topics/${topicId}/saves`, {
      query_event_id: queryEventId,
      resource_id: resourceId,
    });
  }

  removeResult(topicId: string, resourceId: string): Promise<TimelineView> {
    return this.request("POST", `/api/topics/${topicId}/removals`, { resource_id: resourceId });
  }

  listTopics(userId: string): Promise<{ topics: TopicSummary[] }> {
    return this.request("GET", `/api/users/${userId}/topics`);
  }

  fetchTimeline(topicId: string, detail: "overview" | "detailed"): Promise<TimelineView> {
    return this.request("GET", `/api/topics/${topicId}/timeline?detail=${detail}`);
  }

  resumeTopic(userId: string, topicId: string): Promise<void> {
    return this.request("POST", `/api/users/${userId}/ongoing`, { topic_id: topicId });
  }

  renameTopic(topicId: string, title: string): Promise<void> {
    return this.request("PATCH", `/api/topics/${topicId}`, { title });
  }
}
