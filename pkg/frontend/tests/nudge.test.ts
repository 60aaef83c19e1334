// Idle-nudge acceptance: exactly one nudge after >= 5 s of inactivity, never
// below 5 s, and never a second one until the user acts again.

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { IdleNudge, NUDGE_THRESHOLD_MS } from "../src/nudge";

describe("IdleNudge", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  function makeNudge() {
    const fired = vi.fn();
    const nudge = new IdleNudge({ onNudge: fired });
    return { nudge, fired };
  }

  it("fires exactly once after 6 s idle", () => {
    const { nudge, fired } = makeNudge();
    nudge.activity();
    vi.advanceTimersByTime(6000);
    expect(fired).toHaveBeenCalledTimes(1);
  });

  it("never fires below the 5 s threshold", () => {
    const { nudge, fired } = makeNudge();
    nudge.activity();
    vi.advanceTimersByTime(NUDGE_THRESHOLD_MS - 1);
    expect(fired).not.toHaveBeenCalled();
    // typing just before the threshold restarts the pause
    nudge.activity();
    vi.advanceTimersByTime(NUDGE_THRESHOLD_MS - 1);
    expect(fired).not.toHaveBeenCalled();
  });

  it("fires at exactly the threshold, not earlier", () => {
    const { nudge, fired } = makeNudge();
    nudge.activity();
    vi.advanceTimersByTime(4999);
    expect(fired).not.toHaveBeenCalled();
    vi.advanceTimersByTime(1);
    expect(fired).toHaveBeenCalledTimes(1);
  });

  it("stays at one nudge across a 20 s pause", () => {
    const { nudge, fired } = makeNudge();
    nudge.activity();
    vi.advanceTimersByTime(20_000);
    expect(fired).toHaveBeenCalledTimes(1);
  });

  it("re-arms after the next user activity", () => {
    const { nudge, fired } = makeNudge();
    nudge.activity();
    vi.advanceTimersByTime(8000);
    expect(fired).toHaveBeenCalledTimes(1);
    nudge.activity();
    vi.advanceTimersByTime(5000);
    expect(fired).toHaveBeenCalledTimes(2);
  });

  it("does not fire while the chat pane is unfocused", () => {
    const { nudge, fired } = makeNudge();
    nudge.activity();
    nudge.setFocused(false);
    vi.advanceTimersByTime(10_000);
    expect(fired).not.toHaveBeenCalled();
    nudge.setFocused(true);
    vi.advanceTimersByTime(5000);
    expect(fired).toHaveBeenCalledTimes(1);
  });

  it("does not fire in manual mode", () => {
    const { nudge, fired } = makeNudge();
    nudge.setMode(false);
    nudge.activity();
    vi.advanceTimersByTime(10_000);
    expect(fired).not.toHaveBeenCalled();
  });

  it("swallows nudge failures", async () => {
    const nudge = new IdleNudge({
      onNudge: () => Promise.reject(new Error("provider down")),
    });
    nudge.activity();
    vi.advanceTimersByTime(5000);
    await vi.runAllTimersAsync();
    // no unhandled rejection: reaching this line is the assertion
    nudge.stop();
  });
});
