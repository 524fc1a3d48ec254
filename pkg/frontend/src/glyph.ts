/**
 * Parametric avatar head geometry, rebuilt client-side from the ten [0,1]
 * parameters. This mirrors the server's mesh builder exactly (same
 * primitive order, same formulas), so the neutral head matches the shared
 * golden fixture and a frame only ever needs to carry parameters.
 */

export interface GlyphGeometry {
    vertices: Float64Array;   // xyz triples
    triangles: Uint32Array;   // index triples
    colors: Float64Array;     // rgb triples, one per vertex
}

export const LOD_LEVELS = [0, 1, 2] as const;

const ELONGATION_RANGE: [number, number] = [0.8, 1.4];
const EYE_SEPARATION_RANGE: [number, number] = [0.30, 0.80];
const NOSE_LENGTH_RANGE: [number, number] = [0.12, 0.57];
const MOUTH_HALF_WIDTH_RANGE: [number, number] = [0.12, 0.50];
const MOUTH_BEND_MAX = 0.22;
const HAIR_CAP_ANGLE_RANGE: [number, number] = [0.5, 1.5];

const SKIN_LIGHT = [0.99, 0.86, 0.67];
const SKIN_DARK = [0.38, 0.24, 0.13];
const IRIS_LIGHT = [0.56, 0.75, 0.95];
const IRIS_DARK = [0.24, 0.13, 0.05];
const EYE_WHITE = [0.96, 0.96, 0.96];
const LIP_COLOR = [0.62, 0.22, 0.22];

type Vec3 = [number, number, number];

function lerp3(a: number[], b: number[], t: number): Vec3 {
    return [a[0] + (b[0] - a[0]) * t,
            a[1] + (b[1] - a[1]) * t,
            a[2] + (b[2] - a[2]) * t];
}

function span(range: [number, number], t: number): number {
    return range[0] + (range[1] - range[0]) * t;
}

/** Same arithmetic as CPython's colorsys.hsv_to_rgb. */
export function hsvToRgb(h: number, s: number, v: number): Vec3 {
    if (s === 0.0) return [v, v, v];
    let i = Math.trunc(h * 6.0);
    const f = h * 6.0 - i;
    const p = v * (1.0 - s);
    const q = v * (1.0 - s * f);
    const t = v * (1.0 - s * (1.0 - f));
    i = i % 6;
    switch (i) {
        case 0: return [v, t, p];
        case 1: return [q, v, p];
        case 2: return [p, v, t];
        case 3: return [p, q, v];
        case 4: return [t, p, q];
        default: return [v, p, q];
    }
}

function cross(a: Vec3, b: Vec3): Vec3 {
    return [a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]];
}

function norm(a: Vec3): number {
    return Math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

function scale(a: Vec3, s: number): Vec3 {
    return [a[0] * s, a[1] * s, a[2] * s];
}

function add(a: Vec3, b: Vec3): Vec3 {
    return [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
}

class MeshBuilder {
    vertices: number[] = [];
    triangles: number[] = [];
    colors: number[] = [];

    private push(verts: Vec3[], tris: number[][], color: Vec3): void {
        const base = this.vertices.length / 3;
        for (const v of verts) this.vertices.push(v[0], v[1], v[2]);
        for (let i = 0; i < verts.length; i++) {
            this.colors.push(color[0], color[1], color[2]);
        }
        for (const t of tris) {
            this.triangles.push(t[0] + base, t[1] + base, t[2] + base);
        }
    }

    ellipsoid(center: Vec3, radii: Vec3, nAz: number, nRings: number,
              color: Vec3): void {
        const [cx, cy, cz] = center;
        const [rx, ry, rz] = radii;
        const verts: Vec3[] = [[cx, cy + ry, cz]];
        for (let i = 1; i < nRings; i++) {
            const polar = Math.PI * i / nRings;
            const y = Math.cos(polar);
            const ring = Math.sin(polar);
            for (let j = 0; j < nAz; j++) {
                const az = 2.0 * Math.PI * j / nAz;
                verts.push([cx + rx * ring * Math.cos(az), cy + ry * y,
                            cz + rz * ring * Math.sin(az)]);
            }
        }
        verts.push([cx, cy - ry, cz]);
        const top = 0;
        const bottom = verts.length - 1;
        const ring0 = (i: number, j: number) =>
            1 + (i - 1) * nAz + ((j % nAz) + nAz) % nAz;
        const tris: number[][] = [];
        for (let j = 0; j < nAz; j++) {
            tris.push([top, ring0(1, j + 1), ring0(1, j)]);
        }
        for (let i = 1; i < nRings - 1; i++) {
            for (let j = 0; j < nAz; j++) {
                const a = ring0(i, j);
                const b = ring0(i, j + 1);
                const c = ring0(i + 1, j + 1);
                const d = ring0(i + 1, j);
                tris.push([a, b, c]);
                tris.push([a, c, d]);
            }
        }
        for (let j = 0; j < nAz; j++) {
            tris.push([bottom, ring0(nRings - 1, j), ring0(nRings - 1, j + 1)]);
        }
        this.push(verts, tris, color);
    }

    cone(baseCenter: Vec3, axisIn: Vec3, length: number, radius: number,
         nAz: number, color: Vec3): void {
        const axis = scale(axisIn, 1.0 / norm(axisIn));
        let ref: Vec3 = [0.0, 1.0, 0.0];
        if (Math.abs(axis[0] * ref[0] + axis[1] * ref[1] + axis[2] * ref[2])
                > 0.9) {
            ref = [1.0, 0.0, 0.0];
        }
        let e1 = cross(axis, ref);
        e1 = scale(e1, 1.0 / norm(e1));
        const e2 = cross(axis, e1);
        const verts: Vec3[] = [];
        for (let j = 0; j < nAz; j++) {
            const az = 2.0 * Math.PI * j / nAz;
            verts.push(add(baseCenter,
                           add(scale(e1, radius * Math.cos(az)),
                               scale(e2, radius * Math.sin(az)))));
        }
        const apex = verts.length;
        verts.push(add(baseCenter, scale(axis, length)));
        const center = verts.length;
        verts.push([...baseCenter]);
        const tris: number[][] = [];
        for (let j = 0; j < nAz; j++) {
            const a = j;
            const b = (j + 1) % nAz;
            tris.push([apex, a, b]);
            tris.push([center, b, a]);
        }
        this.push(verts, tris, color);
    }

    cappedTube(path: Vec3[], radius: number, nSides: number,
               color: Vec3): void {
        const nPts = path.length;
        const rings: number[][] = [];
        const verts: Vec3[] = [];
        const ref: Vec3 = [0.0, 1.0, 0.0];
        for (let k = 0; k < nPts; k++) {
            const ahead = path[Math.min(k + 1, nPts - 1)];
            const behind = path[Math.max(k - 1, 0)];
            let tangent: Vec3 = [ahead[0] - behind[0], ahead[1] - behind[1],
                                 ahead[2] - behind[2]];
            tangent = scale(tangent, 1.0 / norm(tangent));
            let e1 = cross(tangent, ref);
            if (norm(e1) < 1e-9) e1 = cross(tangent, [1.0, 0.0, 0.0]);
            e1 = scale(e1, 1.0 / norm(e1));
            const e2 = cross(tangent, e1);
            const ring: number[] = [];
            for (let j = 0; j < nSides; j++) {
                const az = 2.0 * Math.PI * j / nSides;
                ring.push(verts.length);
                verts.push(add(path[k],
                               add(scale(e1, radius * Math.cos(az)),
                                   scale(e2, radius * Math.sin(az)))));
            }
            rings.push(ring);
        }
        const startCap = verts.length;
        verts.push([...path[0]]);
        const endCap = verts.length;
        verts.push([...path[nPts - 1]]);
        const tris: number[][] = [];
        for (let k = 0; k < nPts - 1; k++) {
            for (let j = 0; j < nSides; j++) {
                const a = rings[k][j];
                const b = rings[k][(j + 1) % nSides];
                const c = rings[k + 1][(j + 1) % nSides];
                const d = rings[k + 1][j];
                tris.push([a, b, c]);
                tris.push([a, c, d]);
            }
        }
        const last = rings.length - 1;
        for (let j = 0; j < nSides; j++) {
            tris.push([startCap, rings[0][(j + 1) % nSides], rings[0][j]]);
            tris.push([endCap, rings[last][j], rings[last][(j + 1) % nSides]]);
        }
        this.push(verts, tris, color);
    }

    capShell(center: Vec3, radii: Vec3, polarMax: number, nAz: number,
             nRings: number, color: Vec3): void {
        const [cx, cy, cz] = center;
        const [rx, ry, rz] = radii;
        const verts: Vec3[] = [[cx, cy + ry, cz]];
        for (let i = 1; i <= nRings; i++) {
            const polar = polarMax * i / nRings;
            const y = Math.cos(polar);
            const ring = Math.sin(polar);
            for (let j = 0; j < nAz; j++) {
                const az = 2.0 * Math.PI * j / nAz;
                verts.push([cx + rx * ring * Math.cos(az), cy + ry * y,
                            cz + rz * ring * Math.sin(az)]);
            }
        }
        const rimY = cy + ry * Math.cos(polarMax);
        const diskCenter = verts.length;
        verts.push([cx, rimY, cz]);
        const ring0 = (i: number, j: number) =>
            1 + (i - 1) * nAz + ((j % nAz) + nAz) % nAz;
        const tris: number[][] = [];
        for (let j = 0; j < nAz; j++) {
            tris.push([0, ring0(1, j + 1), ring0(1, j)]);
        }
        for (let i = 1; i < nRings; i++) {
            for (let j = 0; j < nAz; j++) {
                const a = ring0(i, j);
                const b = ring0(i, j + 1);
                const c = ring0(i + 1, j + 1);
                const d = ring0(i + 1, j);
                tris.push([a, b, c]);
                tris.push([a, c, d]);
            }
        }
        for (let j = 0; j < nAz; j++) {
            tris.push([diskCenter, ring0(nRings, j), ring0(nRings, j + 1)]);
        }
        this.push(verts, tris, color);
    }
}

function frontZ(x: number, y: number, floor = 0.25): number {
    return Math.sqrt(Math.max(1.0 - x * x - y * y, floor)) * 1.01;
}

export function buildGlyphGeometry(params: number[],
                                   lod: number = 0): GlyphGeometry {
    if (params.length !== 10 || params.some(p => !(p >= 0 && p <= 1))) {
        throw new Error('glyph needs 10 parameters in [0, 1]');
    }
    if (!LOD_LEVELS.includes(lod as 0 | 1 | 2)) {
        throw new Error(`lod must be one of ${LOD_LEVELS}`);
    }
    const [skinC, hairC, eyeS, noseL, mouthW, smile, frown, hairL,
           faceElong, irisC] = params;
    const mult = 2 ** lod;

    const skin = lerp3(SKIN_LIGHT, SKIN_DARK, skinC);
    const hair = hsvToRgb(0.75 * hairC, 0.75, 0.55);
    const iris = lerp3(IRIS_LIGHT, IRIS_DARK, irisC);

    const b = new MeshBuilder();
    b.ellipsoid([0, 0, 0], [1, 1, 1], 12 * mult, 9 * mult, skin);

    const separation = span(EYE_SEPARATION_RANGE, eyeS);
    const eyeY = 0.28;
    const eyeR = 0.155;
    for (const side of [-1.0, 1.0]) {
        const ex = side * separation / 2.0;
        const center: Vec3 = [ex, eyeY, frontZ(ex, eyeY)];
        b.ellipsoid(center, [eyeR, eyeR, eyeR], 8 * mult, 5 * mult,
                    EYE_WHITE as Vec3);
        const outward = scale(center, 1.0 / norm(center));
        b.ellipsoid(add(center, scale(outward, 0.115)),
                    [0.075, 0.075, 0.075], 6 * mult, 4 * mult, iris);
    }

    const noseLen = span(NOSE_LENGTH_RANGE, noseL);
    b.cone([0, 0.02, 0.96], [0, 0, 1], noseLen, 0.10, 10 * mult,
           [skin[0] * 0.93, skin[1] * 0.93, skin[2] * 0.93]);

    const halfWidth = span(MOUTH_HALF_WIDTH_RANGE, mouthW);
    const bend = MOUTH_BEND_MAX * (smile - frown);
    const nSeg = 8 * mult;
    const path: Vec3[] = [];
    for (let k = 0; k <= nSeg; k++) {
        const s = -1.0 + 2.0 * k / nSeg;
        const x = halfWidth * s;
        const y = -0.42 + bend * s * s;
        path.push([x, y, frontZ(x, y)]);
    }
    b.cappedTube(path, 0.045, 4 * mult, LIP_COLOR as Vec3);

    const capAngle = span(HAIR_CAP_ANGLE_RANGE, hairL);
    b.capShell([0, 0, 0], [1.06, 1.06, 1.06], capAngle, 12 * mult,
               4 * mult, hair);

    const vertices = new Float64Array(b.vertices);
    const elongation = span(ELONGATION_RANGE, faceElong);
    for (let i = 1; i < vertices.length; i += 3) vertices[i] *= elongation;
    return {
        vertices,
        triangles: new Uint32Array(b.triangles),
        colors: new Float64Array(b.colors),
    };
}

const geometryCache = new Map<string, GlyphGeometry>();

/** Parameters quantized to 1/1000 share cached geometry. */
export function glyphGeometryCached(params: number[],
                                    lod: number = 0): GlyphGeometry {
    const quantized = params.map(
        p => Math.round(Math.min(Math.max(p, 0), 1) * 1000) / 1000);
    const key = quantized.join(',') + '|' + lod;
    let geometry = geometryCache.get(key);
    if (!geometry) {
        geometry = buildGlyphGeometry(quantized, lod);
        if (geometryCache.size > 4096) geometryCache.clear();
        geometryCache.set(key, geometry);
    }
    return geometry;
}
