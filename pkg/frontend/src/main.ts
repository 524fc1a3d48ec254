import { AssignmentDialogModel, buildAssignmentDialog }
    from './assignmentDialog';
import { CommandQueue } from './commandQueue';
import { buildControlPanel, panDelta } from './controls';
import { Hud } from './hud';
import { SwarmClient } from './net';
import { Command, Frame, assignmentCommand } from './protocol';
import { SwarmRenderer } from './render';
import { ClientSessionState } from './sessionState';

function el<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node as T;
}

async function boot(): Promise<void> {
    const client = new SwarmClient('');
    const canvas = el<HTMLCanvasElement>('scene');
    const renderer = new SwarmRenderer(canvas);
    const hud = new Hud(el('hud'));
    const status = el('status');

    let state: ClientSessionState | null = null;
    let queue: CommandQueue | null = null;
    let cameraDistance = 4.0;
    let closeStream: (() => void) | null = null;

    const showFrame = (frame: Frame) => {
        if (!state || !state.acceptFrame(frame)) return;
        renderer.showFrame(frame, cameraDistance);
        hud.showFrame(frame);
    };

    const emit = (command: Command) => {
        if (!state || !queue) return;
        if (command.type === 'set_camera') cameraDistance = command.d;
        queue.push(command).catch(() => { /* reported via onError */ });
    };

    buildControlPanel(el('controls'), emit);

    const openSession = async (datasetId: string, names: string[]) => {
        closeStream?.();
        const summary = await client.createSession(datasetId);
        state = new ClientSessionState(summary.session_id);
        queue = new CommandQueue(
            (command) => client.sendCommand(summary.session_id, command)
                .then((result) => {
                    if ('points' in result) showFrame(result);
                    else state?.noteSummary(result);
                    return result;
                }),
            (error) => { status.textContent = String(error); });
        closeStream = client.connectStream(summary.session_id, showFrame);
        status.textContent =
            `session ${summary.session_id}: ${summary.n_total} points`;

        const model = new AssignmentDialogModel(names, summary.assignment);
        buildAssignmentDialog(el('dialog'), model, (spec) => {
            status.textContent = 'assignment sent';
            emit(assignmentCommand(spec));
        });
    };

    el<HTMLButtonElement>('load-path').addEventListener('click', async () => {
        try {
            const path = el<HTMLInputElement>('dataset-path').value;
            const delimiter = el<HTMLInputElement>('delimiter').value || ',';
            const label = el<HTMLInputElement>('label-column').value
                || undefined;
            const info = await client.loadDatasetPath(path,
                { delimiter, labelColumn: label });
            await openSession(info.dataset_id, info.names);
        } catch (error) {
            status.textContent = String(error);
        }
    });

    el<HTMLInputElement>('dataset-file').addEventListener('change',
            async (event) => {
        const input = event.target as HTMLInputElement;
        const file = input.files?.[0];
        if (!file) return;
        try {
            const delimiter = el<HTMLInputElement>('delimiter').value || ',';
            const label = el<HTMLInputElement>('label-column').value
                || undefined;
            const info = await client.uploadCsv(await file.text(),
                { delimiter, labelColumn: label });
            await openSession(info.dataset_id, info.names);
        } catch (error) {
            status.textContent = String(error);
        }
    });

    // drag on the canvas pans the 4D cloud; wheel orbits the 3D camera
    let dragging = false;
    let last: [number, number] = [0, 0];
    canvas.addEventListener('pointerdown', (event) => {
        dragging = true;
        last = [event.clientX, event.clientY];
    });
    window.addEventListener('pointerup', () => { dragging = false; });
    canvas.addEventListener('pointermove', (event) => {
        if (dragging) {
            emit(panDelta(event.clientX - last[0], event.clientY - last[1],
                          event.shiftKey));
            last = [event.clientX, event.clientY];
            return;
        }
        const rect = canvas.getBoundingClientRect();
        const column = renderer.pick(
            ((event.clientX - rect.left) / rect.width) * 2 - 1,
            -((event.clientY - rect.top) / rect.height) * 2 + 1);
        const frame = state?.lastFrame ?? null;
        if (frame && column !== null) {
            const point = frame.points[column];
            hud.showHover(point.label, point.i);
        } else {
            hud.showHover(null, null);
        }
    });
    canvas.addEventListener('wheel', (event) => {
        renderer.camera.position.multiplyScalar(
            event.deltaY > 0 ? 1.08 : 1 / 1.08);
        event.preventDefault();
    });
    window.addEventListener('resize', () => renderer.resize());

    const loop = () => {
        renderer.render();
        requestAnimationFrame(loop);
    };
    loop();
}

boot().catch((error) => {
    document.body.textContent = `failed to start: ${error}`;
});
