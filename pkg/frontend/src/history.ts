/** Bounded, newest-first query history with pluggable storage. */

export interface StringStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

const STORAGE_KEY = "clinicalqa-history";

export class QueryHistory {
  private items: string[] = [];

  constructor(
    private readonly store: StringStore,
    private readonly limit = 25,
  ) {
    const raw = store.getItem(STORAGE_KEY);
    if (raw) {
      try {
        const parsed = JSON.parse(raw);
        if (Array.isArray(parsed)) {
          this.items = parsed.filter((x): x is string => typeof x === "string").slice(0, limit);
        }
      } catch {
        /* corrupted storage: start fresh */
      }
    }
  }

  /** Most recent first; re-asking moves a question to the front. */
  add(question: string): void {
    const trimmed = question.trim();
    if (!trimmed) return;
    this.items = [trimmed, ...this.items.filter((q) => q !== trimmed)].slice(0, this.limit);
    this.store.setItem(STORAGE_KEY, JSON.stringify(this.items));
  }

  list(): string[] {
    return [...this.items];
  }

  clear(): void {
    this.items = [];
    this.store.setItem(STORAGE_KEY, "[]");
  }
}

/** In-memory store for tests and environments without localStorage. */
export class MemoryStore implements StringStore {
  private map = new Map<string, string>();

  getItem(key: string): string | null {
    return this.map.get(key) ?? null;
  }

  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }
}
