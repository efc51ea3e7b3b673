/**
 * Local draft persistence.
 *
 * Answers the respondent has staged but not yet submitted (or that failed
 * to reach the server) are kept per session in web storage, so a reload
 * restores them. Storage failures are swallowed: drafts are a convenience,
 * never a source of truth.
 */

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export interface Draft {
  value: string;
  note?: string;
}

export type DraftMap = Record<string, Draft>;

const PREFIX = 'assess-ui:drafts:';

export function draftKey(sessionId: string): string {
  return PREFIX + sessionId;
}

export function loadDrafts(storage: StorageLike, sessionId: string): DraftMap {
  try {
    const raw = storage.getItem(draftKey(sessionId));
    if (!raw) return {};
    const parsed = JSON.parse(raw);
    return parsed && typeof parsed === 'object' ? (parsed as DraftMap) : {};
  } catch {
    return {};
  }
}

export function saveDraft(
  storage: StorageLike,
  sessionId: string,
  questionId: string,
  draft: Draft,
): DraftMap {
  const drafts = loadDrafts(storage, sessionId);
  drafts[questionId] = draft;
  persist(storage, sessionId, drafts);
  return drafts;
}

export function clearDraft(
  storage: StorageLike,
  sessionId: string,
  questionId: string,
): DraftMap {
  const drafts = loadDrafts(storage, sessionId);
  delete drafts[questionId];
  persist(storage, sessionId, drafts);
  return drafts;
}

function persist(storage: StorageLike, sessionId: string, drafts: DraftMap) {
  try {
    if (Object.keys(drafts).length === 0) {
      storage.removeItem(draftKey(sessionId));
    } else {
      storage.setItem(draftKey(sessionId), JSON.stringify(drafts));
    }
  } catch {
    // Best effort only.
  }
}

/** In-memory stand-in used by tests and non-browser environments. */
export class MemoryStorage implements StorageLike {
  private items = new Map<string, string>();

  getItem(key: string): string | null {
    return this.items.has(key) ? (this.items.get(key) as string) : null;
  }

  setItem(key: string, value: string): void {
    this.items.set(key, value);
  }

  removeItem(key: string): void {
    this.items.delete(key);
  }
}
