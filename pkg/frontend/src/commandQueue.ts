import type { Command } from './protocol';

export type CommandSender = (command: Command) => Promise<unknown>;

/**
 * Serializes command delivery: each command is sent only after the previous
 * one resolved, preserving the total order the UI produced regardless of
 * which widget fired. Failures are reported to the optional handler and do
 * not block later commands.
 */
export class CommandQueue {
    private chain: Promise<unknown> = Promise.resolve();
    private sender: CommandSender;
    private onError?: (error: unknown, command: Command) => void;
    sent: number = 0;
    inFlight: number = 0;

    constructor(sender: CommandSender,
                onError?: (error: unknown, command: Command) => void) {
        this.sender = sender;
        this.onError = onError;
    }

    push(command: Command): Promise<unknown> {
        this.inFlight += 1;
        const result = this.chain.then(() => this.sender(command));
        this.chain = result.catch((error) => {
            this.onError?.(error, command);
        }).finally(() => {
            this.sent += 1;
            this.inFlight -= 1;
        });
        return result;
    }
}
