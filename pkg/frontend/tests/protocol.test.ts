import { readFileSync } from 'node:fs';
import { describe, expect, it } from 'vitest';

import { parseFrame, rotateCommand, slabCommand } from '../src/protocol';

const wineText = readFileSync(
    new URL('./fixtures/wine_frame.json', import.meta.url), 'utf-8');

describe('frame parsing', () => {
    it('accepts the wine oracle frame', () => {
        const frame = parseFrame(wineText);
        expect(frame.n_total).toBe(1599);
        expect(frame.n_visible).toBe(1599);
        expect(frame.points).toHaveLength(1599);
        expect(frame.points[0].params).toHaveLength(10);
    });

    it('rejects visible-count mismatch', () => {
        const doc = JSON.parse(wineText);
        doc.n_visible = 7;
        expect(() => parseFrame(JSON.stringify(doc))).toThrow(/claims/);
    });

    it('rejects out-of-range avatar params', () => {
        const doc = JSON.parse(wineText);
        doc.points[3].params[2] = 1.25;
        expect(() => parseFrame(JSON.stringify(doc)))
            .toThrow(/out-of-range/);
    });

    it('survives a serialize/parse round trip', () => {
        const frame = parseFrame(wineText);
        const again = parseFrame(JSON.stringify(frame));
        expect(again.points[42].pos).toEqual(frame.points[42].pos);
    });
});

describe('command constructors', () => {
    it('builds rotate commands in radians', () => {
        expect(rotateCommand('XY', Math.PI / 2)).toEqual(
            { type: 'rotate', plane: 'XY', angle: Math.PI / 2 });
    });

    it('builds slab commands', () => {
        expect(slabCommand(1.5)).toEqual(
            { type: 'set_slab', threshold: 1.5 });
    });
});
