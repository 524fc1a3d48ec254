import { Command, Frame, SessionSummary, parseFrame } from './protocol';

export interface DatasetInfo {
    dataset_id: string;
    n_dims: number;
    n_points: number;
    names: string[];
    has_labels: boolean;
}

export class ServerError extends Error {
    violations: { message: string; dims: number[] }[];

    constructor(message: string,
                violations: { message: string; dims: number[] }[] = []) {
        super(message);
        this.violations = violations;
    }
}

async function expectOk(response: Response): Promise<Response> {
    if (response.ok) return response;
    let message = `${response.status}`;
    let violations: { message: string; dims: number[] }[] = [];
    try {
        const body = await response.json();
        message = body.error ?? JSON.stringify(body);
        violations = body.violations ?? [];
    } catch {
        // not JSON; keep the status text
    }
    throw new ServerError(message, violations);
}

/** Thin REST + WebSocket client for the exploration service. */
export class SwarmClient {
    baseUrl: string;

    constructor(baseUrl = '') {
        this.baseUrl = baseUrl.replace(/\/$/, '');
    }

    async uploadCsv(text: string, options: { delimiter?: string;
                    labelColumn?: string } = {}): Promise<DatasetInfo> {
        const params = new URLSearchParams();
        if (options.delimiter) params.set('delimiter', options.delimiter);
        if (options.labelColumn) params.set('label_column',
                                            options.labelColumn);
        const response = await expectOk(await fetch(
            `${this.baseUrl}/datasets?${params}`,
            { method: 'POST', body: text }));
        return response.json();
    }

    async loadDatasetPath(path: string, options: { delimiter?: string;
                          labelColumn?: string } = {}): Promise<DatasetInfo> {
        const params = new URLSearchParams({ path });
        if (options.delimiter) params.set('delimiter', options.delimiter);
        if (options.labelColumn) params.set('label_column',
                                            options.labelColumn);
        const response = await expectOk(await fetch(
            `${this.baseUrl}/datasets?${params}`, { method: 'POST' }));
        return response.json();
    }

    async createSession(datasetId: string): Promise<SessionSummary> {
        const response = await expectOk(await fetch(
            `${this.baseUrl}/sessions`,
            { method: 'POST',
              headers: { 'content-type': 'application/json' },
              body: JSON.stringify({ dataset_id: datasetId }) }));
        return response.json();
    }

    async getSession(sessionId: string): Promise<SessionSummary> {
        const response = await expectOk(await fetch(
            `${this.baseUrl}/sessions/${sessionId}`));
        return response.json();
    }

    /** POST one command; request_frame resolves to a parsed Frame, state
     * changes resolve to the refreshed session summary. */
    async sendCommand(sessionId: string,
                      command: Command): Promise<Frame | SessionSummary> {
        const response = await expectOk(await fetch(
            `${this.baseUrl}/sessions/${sessionId}/command`,
            { method: 'POST',
              headers: { 'content-type': 'application/json' },
              body: JSON.stringify(command) }));
        const text = await response.text();
        const doc = JSON.parse(text);
        return 'points' in doc ? parseFrame(text) : doc;
    }

    async requestFrame(sessionId: string): Promise<Frame> {
        const response = await expectOk(await fetch(
            `${this.baseUrl}/sessions/${sessionId}/frame`));
        return parseFrame(await response.text());
    }

    /** Subscribe to pushed frames; returns a closer. */
    connectStream(sessionId: string, onFrame: (frame: Frame) => void,
                  onClose?: () => void): () => void {
        const scheme = this.baseUrl.startsWith('https') ? 'wss' : 'ws';
        const host = this.baseUrl
            ? this.baseUrl.replace(/^https?:\/\//, '')
            : window.location.host;
        const socket = new WebSocket(
            `${scheme}://${host}/sessions/${sessionId}/stream`);
        socket.onmessage = (event) => onFrame(parseFrame(event.data));
        if (onClose) socket.onclose = onClose;
        return () => socket.close();
    }
}
