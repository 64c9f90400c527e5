import type { ResourceType } from "./types.js";

// One glyph per resource type; shown beside saved entries and on cards.
const GLYPHS: Record<ResourceType, string> = {
  book: "📖",
  dvd: "📀",
  audiobook: "🎧",
  magazine: "📰",
  music: "🎵",
  other: "📦",
};

export function iconFor(type: ResourceType): string {
  return GLYPHS[type] ?? GLYPHS.other;
}

export function formatWhen(iso: string): string {
  const date = new Date(iso);
  if (Number.isNaN(date.getTime())) return iso;
  return date.toLocaleString(undefined, {
    year: "numeric",
    month: "short",
    day: "numeric",
    hour: "2-digit",
    minute: "2-digit",
  });
}
