import type { Frame } from './protocol';

/**
 * Grouping plan for instanced rendering. Avatars with the same quantized
 * parameter vector share one geometry; each group renders as a single
 * instanced mesh whose per-instance transform carries the server position
 * verbatim plus the perspective size factor. No projection math happens
 * here: positions pass through untouched.
 */
export interface InstanceGroup {
    /** Quantized parameters shared by the group (geometry cache key). */
    params: number[];
    /** Column indices into the frame's point list. */
    members: number[];
    /** xyz translation per member, copied from the frame. */
    positions: number[][];
    /** Uniform scale per member: glyphSize * d / (d - depth). */
    scales: number[];
}

export interface InstancePlan {
    groups: InstanceGroup[];
    total: number;
}

export const PARAM_QUANT_STEPS = 64;

export function quantizeParams(params: number[],
                               steps = PARAM_QUANT_STEPS): number[] {
    return params.map((p) =>
        Math.round(Math.min(Math.max(p, 0), 1) * steps) / steps);
}

export function planInstances(frame: Frame, cameraDistance: number,
                              glyphSize = 0.08,
                              steps = PARAM_QUANT_STEPS): InstancePlan {
    const groups = new Map<string, InstanceGroup>();
    frame.points.forEach((point, column) => {
        const quantized = quantizeParams(point.params, steps);
        const key = quantized.join(',');
        let group = groups.get(key);
        if (!group) {
            group = { params: quantized, members: [], positions: [],
                      scales: [] };
            groups.set(key, group);
        }
        group.members.push(column);
        group.positions.push([point.pos[0], point.pos[1], point.pos[2]]);
        group.scales.push(
            glyphSize * cameraDistance / (cameraDistance - point.depth));
    });
    return { groups: [...groups.values()], total: frame.points.length };
}
