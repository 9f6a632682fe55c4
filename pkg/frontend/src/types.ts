/** Wire types of the review API (mirrors the server's JSON exactly). */

export interface PerLabelScore {
  label: string;
  mean_sim: number;
  std_sim: number;
}

export interface ConflationPayload {
  cluster: string;
  labels: string[];
  per_label: PerLabelScore[];
  cluster_mean: number;
  cluster_std: number;
  n: number;
}

export interface AlignmentPayload {
  node: string;
  tactic: string;
  evidence: string;
}

export type ItemKind = "AlignmentSuspect" | "ConflationSuspect";

export interface ItemView {
  id: string;
  kind: ItemKind;
  payload: ConflationPayload | AlignmentPayload;
  status: string;
  existing_verdict: number | null;
  existing_category: string | null;
}

export interface VerdictBody {
  item: string;
  reviewer: string;
  score: number;
  category?: string;
}

export interface StatsResponse {
  per_reviewer: Record<string, { mean: number; std: number; count: number }>;
  fleiss_kappa: number | null;
  krippendorff_alpha: number | null;
  alpha_metric: string;
  majority: Record<string, string>;
  items_rated_by_all: number;
  notes: string[];
}

export function isAlignment(item: ItemView): item is ItemView & { payload: AlignmentPayload } {
  return item.kind === "AlignmentSuspect";
}
