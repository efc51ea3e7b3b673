export { ApiClient, ApiError } from './client.js';
export type { FetchLike, SubmitResult } from './client.js';
export { ComparisonController, renderComparison } from './compare.js';
export type { CompareState } from './compare.js';
export { MemoryStorage, loadDrafts, saveDraft, clearDraft, draftKey } from './drafts.js';
export type { Draft, DraftMap, StorageLike } from './drafts.js';
export { formatScore, formatSigned, escapeHtml, escapeAttr } from './format.js';
export { createStore } from './store.js';
export type { Store } from './store.js';
export { mountApp } from './app.js';
export type { App, AppConfig } from './app.js';
export { renderQuestion, renderScorePanel, renderWhatIf, renderWizard } from './view.js';
export { AssessmentWizard } from './wizard.js';
export type { StartOptions, WizardState } from './wizard.js';
export * from './types.js';
