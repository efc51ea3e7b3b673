/**
 * Side-by-side session comparison.
 *
 * The controller checks that the selected sessions were assessed against
 * the same catalog version before asking the server to compare them; a
 * mismatch is a blocking notice, not a request. Rows the server marks as
 * differing are highlighted, and the winner gets a banner.
 */

import { ApiClient } from './client.js';
import { createStore } from './store.js';
import type { Store } from './store.js';
import { formatScore, escapeAttr, escapeHtml } from './format.js';
import type { CatalogDoc, ComparisonDoc, SessionSummary } from './types.js';

export interface CompareState {
  sessions: SessionSummary[];
  selected: string[];
  result: ComparisonDoc | null;
  blocked: string;
  notice: string;
}

export class ComparisonController {
  readonly store: Store<CompareState>;

  constructor(private readonly client: ApiClient) {
    this.store = createStore<CompareState>({
      sessions: [],
      selected: [],
      result: null,
      blocked: '',
      notice: '',
    });
  }

  get state(): CompareState {
    return this.store.get();
  }

  async loadSessions(): Promise<void> {
    try {
      const sessions = await this.client.listSessions();
      this.store.set({ sessions, notice: '' });
    } catch (error) {
      this.store.set({ notice: describe(error) });
    }
  }

  toggle(sessionId: string): void {
    const selected = this.state.selected.includes(sessionId)
      ? this.state.selected.filter((id) => id !== sessionId)
      : [...this.state.selected, sessionId];
    this.store.set({ selected, result: null, blocked: '' });
  }

  /** Compare the selected sessions, refusing mixed catalog versions. */
  async run(): Promise<void> {
    const ids = this.state.selected;
    if (ids.length < 2) {
      this.store.set({ notice: 'Select at least two sessions to compare.' });
      return;
    }
    this.store.set({ blocked: '', notice: '' });
    try {
      const versions = new Map<string, string>();
      for (const id of ids) {
        const session = await this.client.getSession(id);
        versions.set(id, session.catalog_version);
      }
      const distinct = [...new Set(versions.values())];
      if (distinct.length > 1) {
        this.store.set({
          result: null,
          blocked:
            `Sessions were assessed against different catalog versions ` +
            `(${distinct.join(', ')}); comparison would not be meaningful.`,
        });
        return;
      }
      const result = await this.client.compareSessions(ids);
      this.store.set({ result });
    } catch (error) {
      this.store.set({ notice: describe(error) });
    }
  }
}

export function renderComparison(
  state: CompareState,
  catalog: CatalogDoc | null = null,
): string {
  const parts: string[] = [`<h2>Compare sessions</h2>`];
  if (state.notice) {
    parts.push(`<p class="notice">${escapeHtml(state.notice)}</p>`);
  }
  const picker = state.sessions
    .map((session) => {
      const checked = state.selected.includes(session.session_id) ? ' checked' : '';
      return (
        `<label class="session-pick"><input type="checkbox" data-action="pick" ` +
        `data-session="${escapeAttr(session.session_id)}"${checked}>` +
        `${escapeHtml(session.dataset_id)} (${session.answered_count} answered)</label>`
      );
    })
    .join('');
  parts.push(`<div class="session-picker">${picker}</div>`);
  parts.push(`<button type="button" data-action="run-compare">Compare</button>`);

  if (state.blocked) {
    parts.push(`<p class="blocked">${escapeHtml(state.blocked)}</p>`);
    return `<div class="comparison">${parts.join('')}</div>`;
  }
  const result = state.result;
  if (!result) {
    return `<div class="comparison">${parts.join('')}</div>`;
  }

  parts.push(
    `<p class="winner-banner">Winner: <strong>${escapeHtml(result.winner)}</strong></p>`,
  );
  const rankingRows = result.ranking
    .map(
      (entry, index) =>
        `<tr><td>${index + 1}</td><td>${escapeHtml(entry.dataset_id)}</td>` +
        `<td>${formatScore(entry.total)}</td></tr>`,
    )
    .join('');
  parts.push(
    `<table class="ranking"><tr><th>Rank</th><th>Dataset</th><th>Total</th></tr>` +
      rankingRows +
      `</table>`,
  );

  const datasets = result.ranking.map((entry) => entry.dataset_id);
  const prompts = new Map(
    (catalog?.questions ?? []).map((q) => [q.id, q.prompt]),
  );
  const header =
    `<tr><th>Sub-facet</th>` +
    datasets.map((d) => `<th>${escapeHtml(d)}</th>`).join('') +
    `</tr>`;
  const rows = result.rows
    .map((row) => {
      const cells = datasets
        .map((dataset) => {
          const value = row.values[dataset];
          const score = row.scores[dataset];
          if (value === null || value === undefined) {
            return `<td class="absent">-</td>`;
          }
          return `<td>${escapeHtml(String(value))} (${formatScore(
            score as number | string,
          )})</td>`;
        })
        .join('');
      const classes = row.differs ? ' class="diff"' : '';
      const label = prompts.get(row.question_id) ?? row.question_id;
      return (
        `<tr${classes} data-question="${escapeAttr(row.question_id)}">` +
        `<td>${escapeHtml(label)}</td>` +
        cells +
        `</tr>`
      );
    })
    .join('');
  parts.push(`<table class="comparison-rows">${header}${rows}</table>`);
  return `<div class="comparison">${parts.join('')}</div>`;
}

function describe(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}
