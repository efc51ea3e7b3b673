/**
 * JSON document shapes served by the assessment HTTP API.
 *
 * Exact numbers arrive either as JSON numbers (when the value is exactly
 * representable) or as "numerator/denominator" strings; ScoreValue covers
 * both and is always displayed verbatim, never recomputed client-side.
 */

export type ScoreValue = number | string;

export type QuestionKind =
  | 'binary'
  | 'categorical'
  | 'numeric_unit'
  | 'categorical_or_numeric';

export const DONT_KNOW = 'DontKnow';
export const NOT_APPLICABLE = 'NotApplicable';

export interface CatalogFacet {
  id: string;
  title: string;
  description: string;
  questions: string[];
}

export interface CatalogQuestion {
  id: string;
  prompt: string;
  kind: QuestionKind;
  values: string[];
  scores: Record<string, ScoreValue>;
  canonical: boolean;
  numeric_passthrough?: boolean;
  default_binary?: boolean;
  dont_know_allowed?: boolean;
  exclusivity_group?: string;
  applicability?: string;
  confidence?: string;
}

export interface CatalogDoc {
  version: string;
  checksum: string;
  facets: CatalogFacet[];
  questions: CatalogQuestion[];
}

export interface SessionCreated {
  session_id: string;
  dataset_id: string;
  catalog_version: string;
  mode: string;
  created: string;
  updated: string;
}

export interface StoredAnswer {
  value: ScoreValue;
  provenance: string;
  note?: string;
}

export interface SessionDoc {
  session_id: string;
  dataset_id: string;
  catalog_version: string;
  answers: Record<string, StoredAnswer>;
  mode: string;
  created: string;
  updated: string;
}

export interface SessionSummary {
  session_id: string;
  dataset_id: string;
  answered_count: number;
  mode: string;
  created: string;
  updated: string;
}

/** Body of PUT /sessions/{id}/answers; null retracts a previous answer. */
export type AnswerPatch = Record<
  string,
  string | number | { value: string | number; note?: string } | null
>;

export interface LiveScore {
  session_id: string;
  dataset_id: string;
  mode: string;
  total: ScoreValue;
  answered_count: number;
  omitted_count: number;
}

export interface Violation {
  question_id: string;
  message: string;
}

export interface QuestionScoreDoc {
  question_id: string;
  value: ScoreValue;
  value_kind: 'label' | 'number';
  score: ScoreValue;
  weight: ScoreValue;
  contribution: ScoreValue;
  provenance: string;
}

export interface ValueReportDoc {
  kind: 'value_report';
  dataset_id: string;
  catalog_version: string;
  mode: string;
  renormalize_on_omission: boolean;
  profile_fingerprint: string | null;
  total: ScoreValue;
  answered_count: number;
  omitted_count: number;
  dont_know_count: number;
  not_applicable_count: number;
  facet_subtotals: Record<string, ScoreValue>;
  questions: QuestionScoreDoc[];
}

export interface DeltaChangeDoc {
  question_id: string;
  old_value: ScoreValue;
  new_value: ScoreValue;
  old_score: ScoreValue;
  new_score: ScoreValue;
  weight: ScoreValue;
  delta: ScoreValue;
}

export interface DeltaReportDoc {
  kind: 'delta_report';
  dataset_id: string;
  base_total: ScoreValue;
  new_total: ScoreValue;
  delta_total: ScoreValue;
  changes: DeltaChangeDoc[];
}

export interface ComparisonRowDoc {
  question_id: string;
  values: Record<string, ScoreValue | null>;
  scores: Record<string, ScoreValue | null>;
  differs: boolean;
}

export interface ComparisonDoc {
  kind: 'comparison_report';
  mode: string;
  winner: string;
  ranking: { dataset_id: string; total: ScoreValue }[];
  rows: ComparisonRowDoc[];
}
