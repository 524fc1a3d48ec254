import { describe, expect, it } from 'vitest';

import { CommandQueue } from '../src/commandQueue';
import type { Command } from '../src/protocol';

describe('command queue', () => {
    it('delivers commands strictly in push order', async () => {
        const delivered: string[] = [];
        const resolvers: (() => void)[] = [];
        const queue = new CommandQueue((command: Command) =>
            new Promise<void>((resolve) => {
                delivered.push(command.type);
                resolvers.push(resolve);
            }));

        queue.push({ type: 'rotate', plane: 'XY', angle: 0.1 });
        queue.push({ type: 'set_slab', threshold: 2 });
        queue.push({ type: 'request_frame' });

        await Promise.resolve();
        expect(delivered).toEqual(['rotate']);  // later sends wait
        resolvers[0]();
        await new Promise((r) => setTimeout(r));
        expect(delivered).toEqual(['rotate', 'set_slab']);
        resolvers[1]();
        await new Promise((r) => setTimeout(r));
        expect(delivered).toEqual(['rotate', 'set_slab', 'request_frame']);
        resolvers[2]();
        await new Promise((r) => setTimeout(r));
        expect(queue.sent).toBe(3);
        expect(queue.inFlight).toBe(0);
    });

    it('reports failures and keeps the queue moving', async () => {
        const errors: string[] = [];
        const delivered: string[] = [];
        const queue = new CommandQueue(
            async (command: Command) => {
                delivered.push(command.type);
                if (command.type === 'set_slab') throw new Error('rejected');
            },
            (error, command) => errors.push(`${command.type}:${error}`));

        queue.push({ type: 'set_slab', threshold: -1 }).catch(() => {});
        await queue.push({ type: 'request_frame' });
        expect(delivered).toEqual(['set_slab', 'request_frame']);
        expect(errors).toHaveLength(1);
        expect(errors[0]).toContain('set_slab');
    });
});
