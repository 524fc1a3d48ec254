import { Command, PLANES, PlaneName, cameraCommand, rotateCommand,
         slabCommand } from './protocol';

export type CommandEmitter = (command: Command) => void;

const DEG = Math.PI / 180;

/** A dial reports absolute knob angles; rotations are incremental, so each
 * movement emits the delta since the previous reading (in radians). */
export function dialDelta(plane: PlaneName, previousDeg: number,
                          currentDeg: number): Command | null {
    if (currentDeg === previousDeg) return null;
    return rotateCommand(plane, (currentDeg - previousDeg) * DEG);
}

export function slabFromSlider(value: number): Command | null {
    if (!(value > 0) || !Number.isFinite(value)) return null;
    return slabCommand(value);
}

export function cameraFromInput(value: number): Command | null {
    if (!(value > 0) || !Number.isFinite(value)) return null;
    return cameraCommand(value);
}

/** One labeled rotation dial per coordinate plane, a slab slider, and a
 * camera-distance input; every interaction funnels into `emit`. */
export function buildControlPanel(root: HTMLElement,
                                  emit: CommandEmitter): void {
    const dials = document.createElement('div');
    dials.className = 'dials';
    for (const plane of PLANES) {
        const wrap = document.createElement('label');
        wrap.className = 'dial';
        wrap.textContent = plane;
        const input = document.createElement('input');
        input.type = 'range';
        input.min = '-180';
        input.max = '180';
        input.value = '0';
        input.step = '1';
        input.dataset.plane = plane;
        let previous = 0;
        input.addEventListener('input', () => {
            const current = Number(input.value);
            const command = dialDelta(plane, previous, current);
            previous = current;
            if (command) emit(command);
        });
        // dial springs back so the next drag starts from zero
        input.addEventListener('change', () => {
            input.value = '0';
            previous = 0;
        });
        wrap.appendChild(input);
        dials.appendChild(wrap);
    }
    root.appendChild(dials);

    const slab = document.createElement('label');
    slab.className = 'slab';
    slab.textContent = 'slab';
    const slider = document.createElement('input');
    slider.type = 'range';
    slider.min = '0.05';
    slider.max = '5';
    slider.step = '0.05';
    slider.value = '1.5';
    slider.id = 'slab-slider';
    slider.addEventListener('input', () => {
        const command = slabFromSlider(Number(slider.value));
        if (command) emit(command);
    });
    slab.appendChild(slider);
    root.appendChild(slab);

    const camera = document.createElement('label');
    camera.className = 'camera';
    camera.textContent = 'camera d';
    const distance = document.createElement('input');
    distance.type = 'number';
    distance.min = '0.5';
    distance.step = '0.5';
    distance.value = '4';
    distance.id = 'camera-distance';
    distance.addEventListener('change', () => {
        const command = cameraFromInput(Number(distance.value));
        if (command) emit(command);
    });
    camera.appendChild(distance);
    root.appendChild(camera);
}

/** Drag-to-pan: screen-space drag converts to a translate command in the
 * XY viewing plane (shift drags pan Z / T). */
export function panDelta(dxPixels: number, dyPixels: number, shift: boolean,
                         unitsPerPixel = 0.01): Command {
    const dx = dxPixels * unitsPerPixel + 0;  // +0 normalizes -0
    const dy = -dyPixels * unitsPerPixel + 0;
    return shift
        ? { type: 'translate', delta: [0, 0, dx, dy] }
        : { type: 'translate', delta: [dx, dy, 0, 0] };
}
