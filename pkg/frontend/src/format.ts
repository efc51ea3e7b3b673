/**
 * Display helpers for server-reported numbers.
 *
 * The service sends exact values: plain JSON numbers when the value has an
 * exact decimal form, "numerator/denominator" strings otherwise. Both are
 * shown as received; nothing here does score arithmetic.
 */

import type { ScoreValue } from './types.js';

export function formatScore(value: ScoreValue): string {
  return typeof value === 'number' ? String(value) : value;
}

/** Deltas get an explicit sign so a preview reads as a change. */
export function formatSigned(value: ScoreValue): string {
  const text = formatScore(value);
  const positive =
    typeof value === 'number' ? value > 0 : !text.startsWith('-') && text !== '0';
  return positive ? `+${text}` : text;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function escapeAttr(text: string): string {
  return escapeHtml(text).replace(/'/g, '&#39;');
}
