/**
 * Assessment wizard: one facet at a time, one server round trip per answer.
 *
 * The controller owns a store of WizardState; views subscribe and re-render.
 * Every accepted submission is reconciled with the server twice over: the
 * PUT response carries the new total, and a follow-up score fetch refreshes
 * the per-question and per-facet breakdown. No score is ever computed here.
 */

import { ApiClient } from './client.js';
import { clearDraft, loadDrafts, saveDraft } from './drafts.js';
import type { Draft, DraftMap, StorageLike } from './drafts.js';
import { createStore } from './store.js';
import type { Store } from './store.js';
import type {
  CatalogDoc,
  CatalogFacet,
  CatalogQuestion,
  DeltaReportDoc,
  LiveScore,
  StoredAnswer,
  ValueReportDoc,
} from './types.js';

export interface WizardState {
  phase: 'idle' | 'loading' | 'ready' | 'failed';
  catalog: CatalogDoc | null;
  sessionId: string;
  datasetId: string;
  mode: string;
  facetIndex: number;
  answers: Record<string, StoredAnswer>;
  drafts: DraftMap;
  report: ValueReportDoc | null;
  live: LiveScore | null;
  violations: Record<string, string>;
  notice: string;
  whatIfPreview: DeltaReportDoc | null;
}

const OFFLINE_NOTICE =
  'Could not reach the assessment service; your answer is kept as a local draft.';

function initialState(): WizardState {
  return {
    phase: 'idle',
    catalog: null,
    sessionId: '',
    datasetId: '',
    mode: 'raw_sum',
    facetIndex: 0,
    answers: {},
    drafts: {},
    report: null,
    live: null,
    violations: {},
    notice: '',
    whatIfPreview: null,
  };
}

export interface StartOptions {
  datasetId?: string;
  mode?: string;
  sessionId?: string;
}

export class AssessmentWizard {
  readonly store: Store<WizardState>;

  constructor(
    private readonly client: ApiClient,
    private readonly storage: StorageLike,
  ) {
    this.store = createStore(initialState());
  }

  get state(): WizardState {
    return this.store.get();
  }

  /** Fetch the catalog, then create a session or resume an existing one. */
  async start(options: StartOptions = {}): Promise<void> {
    this.store.set({ phase: 'loading', notice: '' });
    try {
      const catalog = await this.client.getCatalog();
      if (options.sessionId) {
        const session = await this.client.getSession(options.sessionId);
        const report = await this.client.getScore(options.sessionId);
        this.store.set({
          phase: 'ready',
          catalog,
          sessionId: session.session_id,
          datasetId: session.dataset_id,
          mode: session.mode,
          answers: session.answers,
          drafts: loadDrafts(this.storage, session.session_id),
          report,
        });
      } else {
        const created = await this.client.createSession(
          options.datasetId ?? 'dataset',
          options.mode ?? 'raw_sum',
        );
        this.store.set({
          phase: 'ready',
          catalog,
          sessionId: created.session_id,
          datasetId: created.dataset_id,
          mode: created.mode,
          answers: {},
          drafts: loadDrafts(this.storage, created.session_id),
        });
      }
    } catch (error) {
      this.store.set({ phase: 'failed', notice: describe(error) });
    }
  }

  facets(): CatalogFacet[] {
    return this.state.catalog?.facets ?? [];
  }

  currentFacet(): CatalogFacet | null {
    return this.facets()[this.state.facetIndex] ?? null;
  }

  question(questionId: string): CatalogQuestion | undefined {
    return this.state.catalog?.questions.find((q) => q.id === questionId);
  }

  goTo(index: number): void {
    const count = this.facets().length;
    if (index >= 0 && index < count) {
      this.store.set({ facetIndex: index });
    }
  }

  next(): void {
    this.goTo(this.state.facetIndex + 1);
  }

  prev(): void {
    this.goTo(this.state.facetIndex - 1);
  }

  /** Stage a value locally without submitting it. */
  stage(questionId: string, value: string, note?: string): void {
    const draft: Draft = note ? { value, note } : { value };
    const drafts = saveDraft(this.storage, this.state.sessionId, questionId, draft);
    this.store.set({ drafts });
  }

  /**
   * Submit one answer. The draft is staged first so a failed round trip
   * leaves it recoverable; it is cleared only on server acceptance.
   */
  async submit(
    questionId: string,
    value: string | number,
    note?: string,
  ): Promise<void> {
    this.stage(questionId, String(value), note);
    const violations = { ...this.state.violations };
    delete violations[questionId];
    this.store.set({ violations, notice: '' });

    let result;
    try {
      result = await this.client.submitAnswers(this.state.sessionId, {
        [questionId]: note ? { value, note } : value,
      });
    } catch {
      this.store.set({ notice: OFFLINE_NOTICE });
      return;
    }
    if (!result.ok) {
      const mine = result.violations.find((v) => v.question_id === questionId);
      this.store.set({
        violations: {
          ...this.state.violations,
          [questionId]: mine?.message ?? result.violations[0]?.message ?? 'rejected',
        },
      });
      return;
    }
    const answers = { ...this.state.answers };
    answers[questionId] = note
      ? { value, provenance: 'manual', note }
      : { value, provenance: 'manual' };
    const drafts = clearDraft(this.storage, this.state.sessionId, questionId);
    this.store.set({ answers, drafts, live: result.score });
    await this.refreshReport();
  }

  /** Withdraw an answer entirely; the question becomes omitted again. */
  async retract(questionId: string): Promise<void> {
    let result;
    try {
      result = await this.client.submitAnswers(this.state.sessionId, {
        [questionId]: null,
      });
    } catch {
      this.store.set({ notice: OFFLINE_NOTICE });
      return;
    }
    if (!result.ok) {
      return;
    }
    const answers = { ...this.state.answers };
    delete answers[questionId];
    this.store.set({ answers, live: result.score });
    await this.refreshReport();
  }

  async refreshReport(): Promise<void> {
    try {
      const report = await this.client.getScore(this.state.sessionId);
      this.store.set({ report });
    } catch {
      this.store.set({ notice: OFFLINE_NOTICE });
    }
  }

  /** Ask the server what a change would do, without committing it. */
  async previewWhatIf(changes: Record<string, string | number>): Promise<void> {
    try {
      const preview = await this.client.whatIf(this.state.sessionId, changes);
      this.store.set({ whatIfPreview: preview, notice: '' });
    } catch (error) {
      this.store.set({ notice: describe(error) });
    }
  }

  clearWhatIf(): void {
    this.store.set({ whatIfPreview: null });
  }

  /** Apply a previewed change for real. */
  async commitWhatIf(): Promise<void> {
    const preview = this.state.whatIfPreview;
    if (!preview) return;
    for (const change of preview.changes) {
      const value =
        typeof change.new_value === 'number'
          ? change.new_value
          : String(change.new_value);
      await this.submit(change.question_id, value);
    }
    this.clearWhatIf();
  }
}

function describe(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}
