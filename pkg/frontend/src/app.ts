/**
 * Browser entry point: mounts the wizard and the comparison view on a root
 * element and wires events by delegation. Everything interesting happens in
 * the controllers; this layer only reads the DOM and calls them.
 */

import { ApiClient } from './client.js';
import type { FetchLike } from './client.js';
import { ComparisonController, renderComparison } from './compare.js';
import { MemoryStorage } from './drafts.js';
import type { StorageLike } from './drafts.js';
import { renderWizard } from './view.js';
import { AssessmentWizard } from './wizard.js';
import type { StartOptions } from './wizard.js';

export interface AppConfig {
  baseUrl: string;
  start?: StartOptions;
  storage?: StorageLike;
  fetchImpl?: FetchLike;
}

export interface App {
  wizard: AssessmentWizard;
  comparison: ComparisonController;
}

function pickStorage(config: AppConfig): StorageLike {
  if (config.storage) return config.storage;
  try {
    if (typeof localStorage !== 'undefined') return localStorage;
  } catch {
    // Ignore and fall through to the in-memory stand-in.
  }
  return new MemoryStorage();
}

export function mountApp(root: HTMLElement, config: AppConfig): App {
  const client = new ApiClient(config.baseUrl, config.fetchImpl);
  const wizard = new AssessmentWizard(client, pickStorage(config));
  const comparison = new ComparisonController(client);

  let tab: 'assess' | 'compare' = 'assess';

  function render() {
    const tabs =
      `<nav class="app-tabs">` +
      `<button type="button" data-action="tab" data-tab="assess"` +
      `${tab === 'assess' ? ' class="active"' : ''}>Assess</button>` +
      `<button type="button" data-action="tab" data-tab="compare"` +
      `${tab === 'compare' ? ' class="active"' : ''}>Compare</button>` +
      `</nav>`;
    const body =
      tab === 'assess'
        ? renderWizard(wizard.state)
        : renderComparison(comparison.state, wizard.state.catalog);
    root.innerHTML = tabs + body;
  }

  wizard.store.subscribe(render);
  comparison.store.subscribe(render);

  root.addEventListener('click', (event) => {
    const target = (event.target as HTMLElement).closest('[data-action]');
    if (!(target instanceof HTMLElement)) return;
    const action = target.dataset.action;
    const questionId = target.dataset.question ?? '';
    switch (action) {
      case 'tab':
        tab = target.dataset.tab === 'compare' ? 'compare' : 'assess';
        if (tab === 'compare') void comparison.loadSessions();
        render();
        break;
      case 'answer':
        void wizard.submit(questionId, target.dataset.value ?? '');
        break;
      case 'answer-numeric': {
        const input = root.querySelector<HTMLInputElement>(
          `input[data-role="numeric"][data-question="${questionId}"]`,
        );
        if (input && input.value !== '') {
          void wizard.submit(questionId, Number(input.value));
        }
        break;
      }
      case 'retract':
        void wizard.retract(questionId);
        break;
      case 'nav':
        wizard.goTo(Number(target.dataset.index ?? '0'));
        break;
      case 'whatif-preview': {
        const qid = root.querySelector<HTMLSelectElement>(
          'select[data-role="whatif-question"]',
        )?.value;
        const value = root.querySelector<HTMLInputElement>(
          'input[data-role="whatif-value"]',
        )?.value;
        if (qid && value) void wizard.previewWhatIf({ [qid]: value });
        break;
      }
      case 'whatif-commit':
        void wizard.commitWhatIf();
        break;
      case 'whatif-clear':
        wizard.clearWhatIf();
        break;
      case 'pick':
        comparison.toggle(target.dataset.session ?? '');
        break;
      case 'run-compare':
        void comparison.run();
        break;
      default:
        break;
    }
  });

  // Typing a numeric answer stages it as a draft so reloads keep it.
  root.addEventListener('change', (event) => {
    const target = event.target as HTMLElement;
    if (
      target instanceof HTMLInputElement &&
      target.dataset.role === 'numeric' &&
      target.dataset.question &&
      target.value !== ''
    ) {
      wizard.stage(target.dataset.question, target.value);
    }
  });

  render();
  void wizard.start(config.start ?? {});
  return { wizard, comparison };
}
