import * as THREE from 'three';

import { glyphGeometryCached } from './glyph';
import { InstancePlan, planInstances } from './instancing';
import type { Frame } from './protocol';

/**
 * Builds the three.js content for one frame: one InstancedMesh per group of
 * avatars sharing quantized parameters. Positions and scales come straight
 * from the server frame; an optional depth tint darkens far avatars.
 */
export function buildSceneContent(frame: Frame, cameraDistance: number,
                                  glyphSize = 0.08,
                                  depthTint = false): THREE.Group {
    const plan: InstancePlan = planInstances(frame, cameraDistance,
                                             glyphSize);
    const group = new THREE.Group();
    group.name = 'avatars';
    const matrix = new THREE.Matrix4();
    const color = new THREE.Color();
    for (const instanceGroup of plan.groups) {
        const source = glyphGeometryCached(instanceGroup.params, 0);
        const geometry = new THREE.BufferGeometry();
        geometry.setAttribute('position', new THREE.BufferAttribute(
            new Float32Array(source.vertices), 3));
        geometry.setAttribute('color', new THREE.BufferAttribute(
            new Float32Array(source.colors), 3));
        geometry.setIndex(new THREE.BufferAttribute(source.triangles, 1));
        geometry.computeVertexNormals();
        const material = new THREE.MeshLambertMaterial({
            vertexColors: true });
        const mesh = new THREE.InstancedMesh(geometry, material,
                                             instanceGroup.members.length);
        mesh.userData.members = instanceGroup.members;
        instanceGroup.members.forEach((column, slot) => {
            const [x, y, z] = instanceGroup.positions[slot];
            const s = instanceGroup.scales[slot];
            matrix.makeScale(s, s, s).setPosition(x, y, z);
            mesh.setMatrixAt(slot, matrix);
            if (depthTint) {
                const depth = frame.points[column].depth;
                const tint = Math.min(Math.max(
                    1.0 - 0.12 * (cameraDistance / 4) * depth, 0.4), 1.3);
                mesh.setColorAt(slot, color.setScalar(tint));
            }
        });
        mesh.instanceMatrix.needsUpdate = true;
        group.add(mesh);
    }
    return group;
}

export class SwarmRenderer {
    readonly scene: THREE.Scene;
    readonly camera: THREE.PerspectiveCamera;
    private renderer: THREE.WebGLRenderer;
    private content: THREE.Group | null = null;
    private raycaster = new THREE.Raycaster();
    glyphSize = 0.08;
    depthTint = false;

    constructor(canvas: HTMLCanvasElement) {
        this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
        this.scene = new THREE.Scene();
        this.scene.background = new THREE.Color(0x10141a);
        this.camera = new THREE.PerspectiveCamera(
            45, canvas.clientWidth / canvas.clientHeight, 0.01, 100);
        this.camera.position.set(0, 0.5, 6);
        this.scene.add(new THREE.AmbientLight(0xffffff, 0.45));
        const sun = new THREE.DirectionalLight(0xffffff, 1.1);
        sun.position.set(2, 4, 5);
        this.scene.add(sun);
        this.resize();
    }

    resize(): void {
        const canvas = this.renderer.domElement;
        const width = canvas.clientWidth || canvas.width;
        const height = canvas.clientHeight || canvas.height;
        this.camera.aspect = width / height;
        this.camera.updateProjectionMatrix();
        this.renderer.setSize(width, height, false);
    }

    showFrame(frame: Frame, cameraDistance: number): void {
        if (this.content) {
            this.scene.remove(this.content);
            for (const child of this.content.children) {
                const mesh = child as THREE.InstancedMesh;
                mesh.geometry.dispose();
                (mesh.material as THREE.Material).dispose();
            }
        }
        this.content = buildSceneContent(frame, cameraDistance,
                                         this.glyphSize, this.depthTint);
        this.scene.add(this.content);
    }

    /** Frame column index under the pointer, for hover labels. */
    pick(ndcX: number, ndcY: number): number | null {
        if (!this.content) return null;
        this.raycaster.setFromCamera(new THREE.Vector2(ndcX, ndcY),
                                     this.camera);
        const hits = this.raycaster.intersectObjects(this.content.children);
        for (const hit of hits) {
            const mesh = hit.object as THREE.InstancedMesh;
            if (hit.instanceId !== undefined && mesh.userData.members) {
                return mesh.userData.members[hit.instanceId];
            }
        }
        return null;
    }

    render(): void {
        this.renderer.render(this.scene, this.camera);
    }
}
