// Idle nudge: after 5 s of chat inactivity the assistant offers one gentle
// follow-up. Exactly one nudge per pause, never before the threshold, and
// only while the chat pane has focus in AI-assisted mode. Nudge failures are
// swallowed: a missed nudge is not an error the user should see.

export const NUDGE_THRESHOLD_MS = 5000;

export interface IdleNudgeOptions {
  onNudge: () => void | Promise<void>;
  thresholdMs?: number;
}

export class IdleNudge {
  private readonly onNudge: () => void | Promise<void>;
  private readonly thresholdMs: number;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private firedThisPause = false;
  private focused = true;
  private aiAssisted = true;

  constructor(options: IdleNudgeOptions) {
    this.onNudge = options.onNudge;
    this.thresholdMs = options.thresholdMs ?? NUDGE_THRESHOLD_MS;
  }

  /** User activity (typing, sending): the pause restarts and re-arms. */
  activity(): void {
    this.firedThisPause = false;
    this.arm();
  }

  setFocused(focused: boolean): void {
    this.focused = focused;
    if (focused) {
      this.arm();
    } else {
      this.disarm();
    }
  }

  setMode(aiAssisted: boolean): void {
    this.aiAssisted = aiAssisted;
    if (aiAssisted) {
      this.arm();
    } else {
      this.disarm();
    }
  }

  stop(): void {
    this.disarm();
  }

  private arm(): void {
    this.disarm();
    if (!this.aiAssisted || !this.focused || this.firedThisPause) {
      return;
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      this.firedThisPause = true;
      try {
        const result = this.onNudge();
        if (result instanceof Promise) {
          result.catch(() => undefined);
        }
      } catch {
        // nudges fail silently
      }
    }, this.thresholdMs);
  }

  private disarm(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }
}
