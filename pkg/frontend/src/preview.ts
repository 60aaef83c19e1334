// Live preview pipeline: slider and board changes are debounced at 100 ms,
// requests in flight coalesce follow-up changes into one trailing request,
// and stale responses never overwrite newer ones (latest wins).

export const PREVIEW_DEBOUNCE_MS = 100;

export interface PreviewOptions<S, M> {
  /** Fetch the mesh for a state snapshot; one call equals one mesh request. */
  fetchMesh: (state: S) => Promise<M>;
  /** Receives every applied (non-stale) mesh. */
  onMesh: (mesh: M, state: S) => void;
  /** Called when a fetch fails; the previous mesh stays on screen. */
  onError?: (error: unknown) => void;
  debounceMs?: number;
}

export class PreviewController<S, M> {
  private readonly options: PreviewOptions<S, M>;
  private readonly debounceMs: number;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private pending: S | undefined;
  private inFlight = false;
  private generation = 0;
  requestCount = 0;

  constructor(options: PreviewOptions<S, M>) {
    this.options = options;
    this.debounceMs = options.debounceMs ?? PREVIEW_DEBOUNCE_MS;
  }

  /** Record a new desired state; the fetch happens after the debounce. */
  update(state: S): void {
    this.pending = state;
    if (this.inFlight) {
      return; // coalesce: the trailing request fires when the fetch returns
    }
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.flush();
    }, this.debounceMs);
  }

  /** Fetch immediately (used for the initial render). */
  refreshNow(state: S): void {
    this.pending = state;
    if (!this.inFlight) {
      void this.flush();
    }
  }

  private async flush(): Promise<void> {
    if (this.pending === undefined) {
      return;
    }
    const state = this.pending;
    this.pending = undefined;
    const generation = ++this.generation;
    this.inFlight = true;
    this.requestCount += 1;
    try {
      const mesh = await this.options.fetchMesh(state);
      if (generation === this.generation) {
        this.options.onMesh(mesh, state);
      }
    } catch (error) {
      this.options.onError?.(error);
    } finally {
      this.inFlight = false;
      if (this.pending !== undefined) {
        void this.flush(); // one trailing request for everything coalesced
      }
    }
  }
}
