/** Snippet fragments arrive with matches wrapped in « and » markers.
 * Split them into parts so the renderer can emphasize matches without
 * ever injecting fragment text as HTML. */

export const OPEN_MARK = "«"; // «
export const CLOSE_MARK = "»"; // »

export interface FragmentPart {
  text: string;
  match: boolean;
}

export function splitFragment(fragment: string): FragmentPart[] {
  const parts: FragmentPart[] = [];
  let cursor = 0;
  while (cursor < fragment.length) {
    const open = fragment.indexOf(OPEN_MARK, cursor);
    if (open === -1) {
      parts.push({ text: fragment.slice(cursor), match: false });
      break;
    }
    const close = fragment.indexOf(CLOSE_MARK, open + 1);
    if (close === -1) {
      parts.push({ text: fragment.slice(cursor), match: false });
      break;
    }
    if (open > cursor) parts.push({ text: fragment.slice(cursor, open), match: false });
    parts.push({ text: fragment.slice(open + 1, close), match: true });
    cursor = close + 1;
  }
  return parts.filter((p) => p.text.length > 0);
}
