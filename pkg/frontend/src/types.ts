// Wire types mirroring the HTTP API exactly; the UI renders only these.

export type ResourceType = "book" | "dvd" | "audiobook" | "magazine" | "music" | "other";

export interface ResourceCard {
  resource_id: string;
  title: string;
  authors: string[];
  year: number | null;
  resource_type: ResourceType;
  description: string | null;
  cover_ref: string | null;
}

export interface SerpHit extends ResourceCard {
  score: number;
  saved_now: boolean;
}

export interface SerpPage {
  query_text: string;
  page: number;
  page_size: number;
  total_hits: number;
  hits: SerpHit[];
}

export interface SaveEntry {
  save_event_id: string;
  resource_id: string;
  resource_type: ResourceType;
  title: string;
  saved_at: string;
  removed: boolean;
  removed_at: string | null;
  card: ResourceCard | null;
}

export interface QueryGroup {
  query_event_id: string;
  query_text: string;
  issued_at: string;
  saves: SaveEntry[];
}

export interface SessionGroup {
  start_at: string;
  end_at: string;
  query_groups: QueryGroup[];
}

export interface TimelineView {
  topic_id: string;
  detail: "overview" | "detailed";
  sessions: SessionGroup[];
}

export interface SerpResponse {
  query_event_id: string;
  page: SerpPage;
  overview: TimelineView;
}

export interface TopicSummary {
  topic_id: string;
  user_id: string;
  title: string;
  created_at: string;
  last_activity_at: string;
  is_ongoing: boolean;
}

export interface ApiErrorBody {
  code: string;
  message: string;
}
