/** Payload shapes of the annotation service API. */

export interface Progress {
  done: number;
  total: number;
}

export interface PostEditView {
  step: "post_edit";
  item_id: string;
  output: string;
  postedit: string;
  revisions: number;
  progress: Progress;
}

export interface MeaningCheckView {
  step: "meaning_check";
  item_id: string;
  postedit: string;
  reference: string;
  progress: Progress;
}

export interface ScoringView {
  step: "scoring";
  item_id: string;
  source: string;
  output: string;
  postedit: string;
  reference: string;
  progress: Progress;
}

export interface ItemDoneView {
  step: "done";
  item_id: string;
  progress: Progress;
}

export interface CompleteView {
  step: "complete";
  progress: Progress;
}

export type StepView =
  | PostEditView
  | MeaningCheckView
  | ScoringView
  | ItemDoneView
  | CompleteView;

export type LikertValue = 1 | 2 | 3 | 4 | "other";

export const DIMENSIONS = ["grammaticality", "fluency", "meaning"] as const;
export type Dimension = (typeof DIMENSIONS)[number];

export type ScoreDraft = Record<Dimension, LikertValue | null>;

export function emptyScores(): ScoreDraft {
  return { grammaticality: null, fluency: null, meaning: null };
}

export function scoresComplete(draft: ScoreDraft): boolean {
  return DIMENSIONS.every((dimension) => draft[dimension] !== null);
}
