// Canned API payloads: a topic with activity from two earlier sessions
// plus the current one (the reference SERP state), including one removed
// entry for the strike-through rendering checks.

import type {
  ResourceCard,
  SerpResponse,
  TimelineView,
  TopicSummary,
} from "../src/types.js";

export const TOPIC_ID = "t-firstnations";

function card(id: string, title: string, type: ResourceCard["resource_type"]): ResourceCard {
  return {
    resource_id: id,
    title,
    authors: ["L. Crowfoot"],
    year: 2015,
    resource_type: type,
    description: "A survey.",
    cover_ref: null,
  };
}

export function overviewFixture(): TimelineView {
  return {
    topic_id: TOPIC_ID,
    detail: "overview",
    sessions: [
      {
        start_at: "2024-06-15T10:00:00.000Z",
        end_at: "2024-06-15T10:12:00.000Z",
        query_groups: [
          {
            query_event_id: "e00000007",
            query_text: "indigenous people",
            issued_at: "2024-06-15T10:00:00.000Z",
            saves: [
              {
                save_event_id: "e00000008",
                resource_id: "b001",
                resource_type: "book",
                title: "Indigenous Peoples of the Plains",
                saved_at: "2024-06-15T10:05:00.000Z",
                removed: false,
                removed_at: null,
                card: null,
              },
              {
                save_event_id: "e00000009",
                resource_id: "d001",
                resource_type: "dvd",
                title: "The Plains Speak",
                saved_at: "2024-06-15T10:12:00.000Z",
                removed: false,
                removed_at: null,
                card: null,
              },
            ],
          },
        ],
      },
      {
        start_at: "2024-06-08T09:00:00.000Z",
        end_at: "2024-06-08T09:20:00.000Z",
        query_groups: [
          {
            query_event_id: "e00000004",
            query_text: "plains treaties",
            issued_at: "2024-06-08T09:00:00.000Z",
            saves: [
              {
                save_event_id: "e00000005",
                resource_id: "b009",
                resource_type: "book",
                title: "Treaty Relations",
                saved_at: "2024-06-08T09:10:00.000Z",
                removed: true,
                removed_at: "2024-06-15T10:11:00.000Z",
                card: null,
              },
            ],
          },
        ],
      },
      {
        start_at: "2024-06-01T14:00:00.000Z",
        end_at: "2024-06-01T14:06:00.000Z",
        query_groups: [
          {
            query_event_id: "e00000001",
            query_text: "first nations history",
            issued_at: "2024-06-01T14:00:00.000Z",
            saves: [],
          },
        ],
      },
    ],
  };
}

export function detailedFixture(): TimelineView {
  const view = overviewFixture();
  view.detail = "detailed";
  for (const session of view.sessions) {
    for (const group of session.query_groups) {
      for (const entry of group.saves) {
        entry.card = card(entry.resource_id, entry.title, entry.resource_type);
      }
    }
  }
  return view;
}

export function topicsFixture(): TopicSummary[] {
  return [
    {
      topic_id: TOPIC_ID,
      user_id: "u1",
      title: "First Nations",
      created_at: "2024-06-01T14:00:00.000Z",
      last_activity_at: "2024-06-15T10:12:00.000Z",
      is_ongoing: true,
    },
    {
      topic_id: "t-cooking",
      user_id: "u1",
      title: "prairie cooking",
      created_at: "2024-05-20T08:00:00.000Z",
      last_activity_at: "2024-05-20T08:30:00.000Z",
      is_ongoing: false,
    },
  ];
}

export function serpFixture(): SerpResponse {
  return {
    query_event_id: "e00000007",
    page: {
      query_text: "indigenous people",
      page: 1,
      page_size: 10,
      total_hits: 2,
      hits: [
        { ...card("b001", "Indigenous Peoples of the Plains", "book"), score: 1.41, saved_now: true },
        { ...card("b002", "Indigenous People and the Law", "book"), score: 1.12, saved_now: false },
      ],
    },
    overview: overviewFixture(),
  };
}

// Minimal fetch stand-in: route table plus a call log for assertions.
export type Route = (body: unknown) => { status?: number; body: unknown };

export function mockFetch(routes: Record<string, Route>) {
  const calls: { method: string; path: string; body: unknown }[] = [];
  const impl = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const path = String(input);
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    calls.push({ method, path, body });
    const route = routes[`${method} ${path}`];
    if (!route) {
      return new Response(JSON.stringify({ code: "not_found", message: `no route ${method} ${path}` }), {
        status: 404,
        headers: { "content-type": "application/json" },
      });
    }
    const result = route(body);
    return new Response(JSON.stringify(result.body), {
      status: result.status ?? 200,
      headers: { "content-type": "application/json" },
    });
  };
  return { impl: impl as typeof fetch, calls };
}
