/** Wire types shared with the ndswarm service. */

export type PlaneName = 'XY' | 'XZ' | 'XT' | 'YZ' | 'YT' | 'ZT';
export const PLANES: PlaneName[] = ['XY', 'XZ', 'XT', 'YZ', 'YT', 'ZT'];

export const AXES = ['X', 'Y', 'Z', 'T'] as const;
export const FEATURES = [
    'Skin_C', 'Hair_C', 'Eye_S', 'Nose_L', 'Mouth_W',
    'Smile', 'Frown', 'Hair_L', 'Face_Elong', 'Iris_C',
] as const;
export type AxisName = typeof AXES[number];
export type FeatureName = typeof FEATURES[number];

export type CategoryName = 'spatial' | 'visual' | 'anonymous' | 'skipped';

export interface AssignmentEntry {
    category: CategoryName;
    target?: AxisName | FeatureName;
}
export type AssignmentSpec = Record<string, AssignmentEntry>;

export type Command =
    | { type: 'load_dataset'; dataset_id: string }
    | { type: 'set_assignment'; assignment: AssignmentSpec }
    | { type: 'rotate'; plane: PlaneName; angle: number }
    | { type: 'translate'; delta: [number, number, number, number] }
    | { type: 'set_slab'; threshold: number; mode?: 'post_view' | 'pre_view' }
    | { type: 'set_camera'; d: number }
    | { type: 'request_frame' }
    | { type: 'get_pca_report'; scope?: string };

export interface FramePoint {
    i: number;
    pos: [number, number, number];
    depth: number;
    params: number[];
    label: string | null;
}

export interface Frame {
    seq: number;
    n_total: number;
    n_visible: number;
    points: FramePoint[];
}

export interface SessionSummary {
    session_id: string;
    dataset_id: string;
    n_dims: number;
    n_total: number;
    dimension_names: string[];
    has_assignment: boolean;
    assignment: AssignmentSpec | null;
    view: { rotation: number[]; translation: number[] };
    slab: { threshold: number; mode: string };
    camera: { d: number; near_epsilon: number };
    sigma_range: number;
    state_version: number;
    frame_seq: number;
}

export function parseFrame(text: string): Frame {
    const doc = JSON.parse(text) as Frame;
    if (!Number.isInteger(doc.seq) || !Array.isArray(doc.points)) {
        throw new Error('malformed frame');
    }
    if (doc.n_visible !== doc.points.length) {
        throw new Error(
            `frame claims ${doc.n_visible} visible points, carries ${doc.points.length}`);
    }
    for (const point of doc.points) {
        if (point.pos.length !== 3 || point.params.length !== 10) {
            throw new Error(`point ${point.i} has malformed geometry`);
        }
        for (const value of point.params) {
            if (!(value >= 0 && value <= 1)) {
                throw new Error(`point ${point.i} has out-of-range params`);
            }
        }
    }
    return doc;
}

export function rotateCommand(plane: PlaneName, angleRad: number): Command {
    return { type: 'rotate', plane, angle: angleRad };
}

export function slabCommand(threshold: number): Command {
    return { type: 'set_slab', threshold };
}

export function translateCommand(
        delta: [number, number, number, number]): Command {
    return { type: 'translate', delta };
}

export function cameraCommand(d: number): Command {
    return { type: 'set_camera', d };
}

export function assignmentCommand(assignment: AssignmentSpec): Command {
    return { type: 'set_assignment', assignment };
}
