import { describe, expect, it } from 'vitest';

import {
  MemoryStorage,
  clearDraft,
  draftKey,
  loadDrafts,
  saveDraft,
} from '../src/drafts.js';
import type { StorageLike } from '../src/drafts.js';

describe('draft persistence', () => {
  it('round trips a staged answer', () => {
    const storage = new MemoryStorage();
    saveDraft(storage, 's1', 'data_layout.structure', { value: 'Structured' });
    expect(loadDrafts(storage, 's1')).toEqual({
      'data_layout.structure': { value: 'Structured' },
    });
  });

  it('keeps notes alongside values', () => {
    const storage = new MemoryStorage();
    saveDraft(storage, 's1', 'data_volume.size', { value: '0.35GB', note: 'manifest' });
    expect(loadDrafts(storage, 's1')['data_volume.size']).toEqual({
      value: '0.35GB',
      note: 'manifest',
    });
  });

  it('keeps sessions separate', () => {
    const storage = new MemoryStorage();
    saveDraft(storage, 's1', 'q', { value: 'a' });
    saveDraft(storage, 's2', 'q', { value: 'b' });
    expect(loadDrafts(storage, 's1')['q']?.value).toBe('a');
    expect(loadDrafts(storage, 's2')['q']?.value).toBe('b');
  });

  it('clears a single draft and drops the key when empty', () => {
    const storage = new MemoryStorage();
    saveDraft(storage, 's1', 'q1', { value: 'a' });
    saveDraft(storage, 's1', 'q2', { value: 'b' });
    clearDraft(storage, 's1', 'q1');
    expect(loadDrafts(storage, 's1')).toEqual({ q2: { value: 'b' } });
    clearDraft(storage, 's1', 'q2');
    expect(storage.getItem(draftKey('s1'))).toBeNull();
  });

  it('treats corrupted storage as empty', () => {
    const storage = new MemoryStorage();
    storage.setItem(draftKey('s1'), '{not json');
    expect(loadDrafts(storage, 's1')).toEqual({});
    storage.setItem(draftKey('s1'), '"just a string"');
    expect(loadDrafts(storage, 's1')).toEqual({});
  });

  it('survives storage that throws', () => {
    const storage: StorageLike = {
      getItem() {
        throw new Error('denied');
      },
      setItem() {
        throw new Error('denied');
      },
      removeItem() {
        throw new Error('denied');
      },
    };
    expect(loadDrafts(storage, 's1')).toEqual({});
    expect(() => saveDraft(storage, 's1', 'q', { value: 'a' })).not.toThrow();
    expect(() => clearDraft(storage, 's1', 'q')).not.toThrow();
  });
});
