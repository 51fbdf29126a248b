/** Monotonic response gate: a response renders only if no newer request's
 * response has rendered already, so slow stale responses are discarded. */

export class SequenceGate {
  private issued = 0;
  private applied = 0;

  next(): number {
    return ++this.issued;
  }

  /** True exactly when `sequence` is newer than everything applied so far. */
  tryApply(sequence: number): boolean {
    if (sequence <= this.applied) return false;
    this.applied = sequence;
    return true;
  }

  get lastApplied(): number {
    return this.applied;
  }
}
