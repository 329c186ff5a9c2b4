/** Wire types of the question-answering HTTP API. */

export type AskStatus = "ok" | "no_parse" | "empty";

export interface AskResponse {
  status: AskStatus;
  elapsed_ms: number;
  rule_id?: string;
  parse_tree?: string;
  intent?: string;
  generated_query?: string;
  answers?: string[] | { count: number };
  failure_position?: number;
  detail?: string;
}

export interface HealthResponse {
  status: string;
  courses: number;
}

export interface StatsResponse {
  entities: number;
  triples: number;
  courses: number;
  classes: Record<string, number>;
}

/** One submitted question with its response, as kept in session history. */
export interface AskView {
  question: string;
  response: AskResponse;
}
