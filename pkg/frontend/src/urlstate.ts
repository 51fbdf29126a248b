/** Discover state <-> URL hash codec.
 *
 * The full query text, active facet filters, and page number live in the
 * fragment (for example "#/?q=facial+recog&f=source%3ATechWire&page=2"), so
 * copying the address bar reproduces the exact view.
 */

export interface DiscoverState {
  q: string;
  filters: Map<string, Set<string>>;
  page: number;
}

export function emptyState(): DiscoverState {
  return { q: "", filters: new Map(), page: 1 };
}

export function cloneState(state: DiscoverState): DiscoverState {
  const filters = new Map<string, Set<string>>();
  for (const [key, values] of state.filters) filters.set(key, new Set(values));
  return { q: state.q, filters, page: state.page };
}

export function encodeState(state: DiscoverState): string {
  const params = new URLSearchParams();
  if (state.q) params.set("q", state.q);
  const keys = [...state.filters.keys()].sort();
  for (const key of keys) {
    const values = [...(state.filters.get(key) ?? [])].sort();
    for (const value of values) params.append("f", `${key}:${value}`);
  }
  if (state.page !== 1) params.set("page", String(state.page));
  const encoded = params.toString();
  return encoded ? `#/?${encoded}` : "#/";
}

export function decodeState(hash: string): DiscoverState {
  const state = emptyState();
  const queryStart = hash.indexOf("?");
  if (queryStart === -1) return state;
  const params = new URLSearchParams(hash.slice(queryStart + 1));
  state.q = params.get("q") ?? "";
  for (const raw of params.getAll("f")) {
    const separator = raw.indexOf(":");
    if (separator <= 0 || separator === raw.length - 1) continue;
    const key = raw.slice(0, separator);
    const value = raw.slice(separator + 1);
    if (!state.filters.has(key)) state.filters.set(key, new Set());
    state.filters.get(key)!.add(value);
  }
  const page = Number(params.get("page") ?? "1");
  state.page = Number.isInteger(page) && page >= 1 ? page : 1;
  return state;
}

export function statesEqual(a: DiscoverState, b: DiscoverState): boolean {
  return encodeState(a) === encodeState(b);
}

export function toggleFilter(state: DiscoverState, key: string, value: string): DiscoverState {
  const next = cloneState(state);
  const values = next.filters.get(key) ?? new Set<string>();
  if (values.has(value)) {
    values.delete(value);
  } else {
    values.add(value);
  }
  if (values.size === 0) {
    next.filters.delete(key);
  } else {
    next.filters.set(key, values);
  }
  next.page = 1;
  return next;
}
