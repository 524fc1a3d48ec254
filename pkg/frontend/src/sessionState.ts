import type { Frame, SessionSummary } from './protocol';

/**
 * Client-side session mirror. The pipeline itself lives on the server; the
 * client only tracks the last accepted frame and a monotone sequence guard
 * so an out-of-order delivery can never paint a stale frame over a newer
 * one.
 */
export class ClientSessionState {
    sessionId: string;
    lastFrame: Frame | null = null;
    stateVersion = 0;
    pendingCommands = 0;

    constructor(sessionId: string) {
        this.sessionId = sessionId;
    }

    /** Accept a frame only if it is newer than the one on screen. */
    acceptFrame(frame: Frame): boolean {
        if (this.lastFrame !== null && frame.seq <= this.lastFrame.seq) {
            return false;
        }
        this.lastFrame = frame;
        return true;
    }

    noteSummary(summary: SessionSummary): void {
        this.stateVersion = Math.max(this.stateVersion, summary.state_version);
    }
}
