/**
 * HTML renderers for the wizard.
 *
 * Pure functions from state to markup: the mount layer re-runs them on
 * every store change and wires events by delegation on data-action
 * attributes. All displayed numbers are formatted server values.
 */

import { formatScore, formatSigned, escapeAttr, escapeHtml } from './format.js';
import type { WizardState } from './wizard.js';
import type {
  CatalogFacet,
  CatalogQuestion,
  QuestionScoreDoc,
  ScoreValue,
} from './types.js';
import { DONT_KNOW, NOT_APPLICABLE } from './types.js';

function choiceButton(
  question: CatalogQuestion,
  value: string,
  current: ScoreValue | undefined,
  draft: string | undefined,
  extraClass = '',
): string {
  const selected = current !== undefined && String(current) === value;
  const drafted = !selected && draft === value;
  const classes = ['choice', extraClass, selected ? 'selected' : '', drafted ? 'draft' : '']
    .filter(Boolean)
    .join(' ');
  return (
    `<button type="button" class="${classes}" data-action="answer" ` +
    `data-question="${escapeAttr(question.id)}" data-value="${escapeAttr(value)}">` +
    `${escapeHtml(value)}</button>`
  );
}

function numericControl(question: CatalogQuestion, draft: string | undefined): string {
  const id = escapeAttr(question.id);
  const drafted = draft !== undefined && !question.values.includes(draft);
  const value = drafted ? ` value="${escapeAttr(draft as string)}"` : '';
  return (
    `<span class="numeric-entry">` +
    `<input type="number" step="any" data-role="numeric" data-question="${id}"${value}>` +
    `<button type="button" data-action="answer-numeric" data-question="${id}">Submit</button>` +
    `</span>`
  );
}

export function renderQuestion(state: WizardState, question: CatalogQuestion): string {
  const answer = state.answers[question.id];
  const draft = state.drafts[question.id]?.value;
  const violation = state.violations[question.id];
  const confirmed = state.report?.questions.find(
    (q: QuestionScoreDoc) => q.question_id === question.id,
  );

  const parts: string[] = [];
  parts.push(`<p class="prompt">${escapeHtml(question.prompt)}</p>`);

  const choices = question.values
    .map((value) => choiceButton(question, value, answer?.value, draft))
    .join('');
  const numeric =
    question.kind === 'numeric_unit' || question.kind === 'categorical_or_numeric'
      ? numericControl(question, draft)
      : '';
  parts.push(`<div class="choices">${choices}${numeric}</div>`);

  // Explicit uncertainty options: answered with score 0, not omitted.
  const sentinels: string[] = [];
  if (question.dont_know_allowed !== false) {
    sentinels.push(choiceButton(question, DONT_KNOW, answer?.value, draft, 'sentinel'));
  }
  sentinels.push(choiceButton(question, NOT_APPLICABLE, answer?.value, draft, 'sentinel'));
  if (answer) {
    sentinels.push(
      `<button type="button" class="retract" data-action="retract" ` +
        `data-question="${escapeAttr(question.id)}">Clear answer</button>`,
    );
  }
  parts.push(
    `<div class="sentinel-group" title="Answered with score 0; different from leaving the question open">` +
      sentinels.join('') +
      `</div>`,
  );

  if (confirmed) {
    parts.push(
      `<p class="confirmed-score">Score: <span class="score">${formatScore(
        confirmed.score,
      )}</span></p>`,
    );
  }
  if (!answer && draft !== undefined) {
    parts.push(`<p class="draft-marker">Draft saved locally, not submitted.</p>`);
  }
  if (violation) {
    parts.push(`<p class="violation">${escapeHtml(violation)}</p>`);
  }
  return (
    `<section class="question" data-question="${escapeAttr(question.id)}">` +
    parts.join('') +
    `</section>`
  );
}

function facetNav(state: WizardState): string {
  const facets = state.catalog?.facets ?? [];
  const buttons = facets
    .map((facet: CatalogFacet, index: number) => {
      const classes = ['facet-tab', index === state.facetIndex ? 'active' : '']
        .filter(Boolean)
        .join(' ');
      return (
        `<button type="button" class="${classes}" data-action="nav" data-index="${index}">` +
        `${escapeHtml(facet.title)}</button>`
      );
    })
    .join('');
  return `<nav class="facet-nav">${buttons}</nav>`;
}

export function renderScorePanel(state: WizardState): string {
  const total = state.live?.total ?? state.report?.total;
  const lines: string[] = [];
  lines.push(`<h2>Live score</h2>`);
  lines.push(
    `<p class="total">Total: <span class="total-value">${
      total === undefined ? '-' : formatScore(total)
    }</span></p>`,
  );
  const answered = state.live?.answered_count ?? state.report?.answered_count;
  const omitted = state.live?.omitted_count ?? state.report?.omitted_count;
  if (answered !== undefined) {
    lines.push(
      `<p class="counts">Answered: ${answered}  Omitted: ${omitted}</p>`,
    );
  }
  if (state.report) {
    lines.push(
      `<p class="sentinel-counts">DontKnow: ${state.report.dont_know_count}  ` +
        `NotApplicable: ${state.report.not_applicable_count}</p>`,
    );
    const facets = state.catalog?.facets ?? [];
    const rows = Object.entries(state.report.facet_subtotals)
      .map(([facetId, subtotal]) => {
        const title = facets.find((f) => f.id === facetId)?.title ?? facetId;
        return (
          `<tr data-facet="${escapeAttr(facetId)}"><td>${escapeHtml(title)}</td>` +
          `<td class="subtotal">${formatScore(subtotal)}</td></tr>`
        );
      })
      .join('');
    lines.push(`<table class="facet-subtotals">${rows}</table>`);
  }
  return `<aside class="score-panel">${lines.join('')}</aside>`;
}

export function renderWhatIf(state: WizardState): string {
  const preview = state.whatIfPreview;
  const parts: string[] = [`<h2>What if</h2>`];
  const answered = Object.keys(state.answers).sort();
  const options = answered
    .map((qid) => `<option value="${escapeAttr(qid)}">${escapeHtml(qid)}</option>`)
    .join('');
  parts.push(
    `<form class="whatif-form">` +
      `<select data-role="whatif-question">${options}</select>` +
      `<input type="text" data-role="whatif-value" placeholder="new value">` +
      `<button type="button" data-action="whatif-preview">Preview</button>` +
      `</form>`,
  );
  if (preview) {
    const rows = preview.changes
      .map(
        (change) =>
          `<tr><td>${escapeHtml(change.question_id)}</td>` +
          `<td>${escapeHtml(String(change.old_value))}</td>` +
          `<td>${escapeHtml(String(change.new_value))}</td>` +
          `<td class="delta">${formatSigned(change.delta)}</td></tr>`,
      )
      .join('');
    parts.push(
      `<table class="whatif-changes">${rows}</table>` +
        `<p class="whatif-summary">New total: <span class="new-total">${formatScore(
          preview.new_total,
        )}</span> (<span class="delta-total">${formatSigned(
          preview.delta_total,
        )}</span>)</p>` +
        `<button type="button" data-action="whatif-commit">Apply</button>` +
        `<button type="button" data-action="whatif-clear">Discard</button>`,
    );
  }
  return `<aside class="whatif-panel">${parts.join('')}</aside>`;
}

export function renderWizard(state: WizardState): string {
  if (state.phase === 'idle' || state.phase === 'loading') {
    return `<div class="wizard loading">Loading the questionnaire...</div>`;
  }
  if (state.phase === 'failed' || !state.catalog) {
    return `<div class="wizard failed"><p class="notice">${escapeHtml(
      state.notice || 'The assessment service is unavailable.',
    )}</p></div>`;
  }
  const facet = state.catalog.facets[state.facetIndex];
  const questionsById = new Map(state.catalog.questions.map((q) => [q.id, q]));
  const questions = facet
    ? facet.questions
        .map((qid) => {
          const question = questionsById.get(qid);
          return question ? renderQuestion(state, question) : '';
        })
        .join('')
    : '';
  const notice = state.notice
    ? `<p class="notice">${escapeHtml(state.notice)}</p>`
    : '';
  const header =
    `<header class="session-line">Dataset: ${escapeHtml(state.datasetId)}  ` +
    `Session: ${escapeHtml(state.sessionId)}  Mode: ${escapeHtml(state.mode)}</header>`;
  return (
    `<div class="wizard">` +
    header +
    notice +
    facetNav(state) +
    `<main class="facet">` +
    (facet ? `<h2>${escapeHtml(facet.title)}</h2>` : '') +
    questions +
    `</main>` +
    renderScorePanel(state) +
    renderWhatIf(state) +
    `</div>`
  );
}
