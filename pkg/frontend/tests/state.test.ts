import { describe, expect, it } from 'vitest';

import type { Frame } from '../src/protocol';
import { ClientSessionState } from '../src/sessionState';

function frameWithSeq(seq: number): Frame {
    return { seq, n_total: 3, n_visible: 0, points: [] };
}

describe('frame sequence guard', () => {
    it('accepts strictly newer frames', () => {
        const state = new ClientSessionState('s1');
        expect(state.acceptFrame(frameWithSeq(1))).toBe(true);
        expect(state.acceptFrame(frameWithSeq(2))).toBe(true);
        expect(state.lastFrame?.seq).toBe(2);
    });

    it('never renders a stale frame over a newer one', () => {
        const state = new ClientSessionState('s1');
        expect(state.acceptFrame(frameWithSeq(5))).toBe(true);
        expect(state.acceptFrame(frameWithSeq(3))).toBe(false);
        expect(state.acceptFrame(frameWithSeq(5))).toBe(false);
        expect(state.lastFrame?.seq).toBe(5);

        // shuffled delivery: rendered sequence stays monotone
        const rendered: number[] = [];
        for (const seq of [6, 9, 7, 12, 8, 10]) {
            if (state.acceptFrame(frameWithSeq(seq))) rendered.push(seq);
        }
        expect(rendered).toEqual([6, 9, 12]);
        for (let i = 1; i < rendered.length; i++) {
            expect(rendered[i]).toBeGreaterThan(rendered[i - 1]);
        }
    });

    it('tracks the newest state version seen', () => {
        const state = new ClientSessionState('s1');
        const summary = { state_version: 4 } as never;
        state.noteSummary(summary);
        state.noteSummary({ state_version: 2 } as never);
        expect(state.stateVersion).toBe(4);
    });
});
