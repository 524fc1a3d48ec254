import type { Frame } from './protocol';

export function visibleCountText(frame: Frame | null): string {
    if (!frame) return 'no frame';
    return `${frame.n_visible} / ${frame.n_total} visible`;
}

export class Hud {
    private countEl: HTMLElement;
    private labelEl: HTMLElement;

    constructor(root: HTMLElement) {
        this.countEl = document.createElement('div');
        this.countEl.id = 'hud-count';
        this.countEl.textContent = visibleCountText(null);
        this.labelEl = document.createElement('div');
        this.labelEl.id = 'hud-label';
        root.appendChild(this.countEl);
        root.appendChild(this.labelEl);
    }

    showFrame(frame: Frame): void {
        this.countEl.textContent = visibleCountText(frame);
    }

    showHover(label: string | null, index: number | null): void {
        this.labelEl.textContent =
            label !== null ? `${label} (#${index})`
                : index !== null ? `point #${index}` : '';
    }
}
