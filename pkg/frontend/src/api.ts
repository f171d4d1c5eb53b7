/** Typed client for the clinicalqa HTTP service. */

export interface SentencePayload {
  index: number;
  text: string;
  line_score: number;
  highlighted: boolean;
}

export interface AbstractPayload {
  doc_id: string;
  title: string;
  abstract_score: number;
  max_line_score: number;
  combined_score: number;
  sentences: SentencePayload[];
}

export interface AnsweredPayload {
  question: string;
  answerable: true;
  score: number;
  class_number: number;
  focus_tags: string[];
  retrieval_fallback: boolean;
  results: AbstractPayload[];
}

export interface RefusalPayload {
  question: string;
  answerable: false;
  score: number;
  reason: string;
}

export type AskPayload = AnsweredPayload | RefusalPayload;

export interface DocPayload {
  doc_id: string;
  title: string;
  abstract: string;
  sentences: { index: number; text: string }[];
  label?: string;
}

export interface HealthPayload {
  status: string;
  docs: number;
  evidence_docs: number;
  backend: string;
}

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number | null = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Thin fetch wrapper; every failure surfaces as ApiError. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    } catch (err) {
      throw new ApiError(`cannot reach the service at ${this.baseUrl}: ${String(err)}`);
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        /* non-JSON error body; keep the status text */
      }
      throw new ApiError(detail, response.status);
    }
    return (await response.json()) as T;
  }

  ask(question: string, topK?: number): Promise<AskPayload> {
    const body: Record<string, unknown> = { question };
    if (topK !== undefined) body.top_k = topK;
    return this.request<AskPayload>("/ask", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getDoc(docId: string): Promise<DocPayload> {
    return this.request<DocPayload>(`/docs/${encodeURIComponent(docId)}`);
  }

  health(): Promise<HealthPayload> {
    return this.request<HealthPayload>("/health");
  }

  reindex(): Promise<{ status: string }> {
    return this.request<{ status: string }>("/admin/reindex", { method: "POST" });
  }
}
