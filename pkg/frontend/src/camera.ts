/** Camera pose serialization and the eight cardinal preset viewpoints.
 *
 * The camera sent with geometric queries must be exactly the camera used to
 * render, so picking the pixel under the cursor hits what the user sees.
 */

import * as THREE from "three";

import type { CameraDoc, Triple } from "./types.js";

export function cameraToDoc(
  camera: THREE.PerspectiveCamera,
  viewport: [number, number],
): CameraDoc {
  camera.updateMatrixWorld();
  const q = camera.quaternion;
  return {
    position: camera.position.toArray() as Triple,
    orientation: [q.x, q.y, q.z, q.w],
    fovY: (camera.fov * Math.PI) / 180,
    viewport,
    near: camera.near,
    far: camera.far,
  };
}

/** Screen position of a world point under the camera (origin top-left). */
export function projectToScreen(
  camera: THREE.PerspectiveCamera,
  viewport: [number, number],
  point: THREE.Vector3,
): [number, number] {
  const ndc = point.clone().project(camera);
  return [((ndc.x + 1) / 2) * viewport[0], ((1 - ndc.y) / 2) * viewport[1]];
}

export interface Preset {
  name: string;
  direction: Triple; // unit vector from the target toward the camera
}

/** ViewSphere-style cardinal viewpoints around the scene. */
export const CARDINAL_PRESETS: Preset[] = [
  { name: "N", direction: [0, 0, -1] },
  { name: "NE", direction: [Math.SQRT1_2, 0, -Math.SQRT1_2] },
  { name: "E", direction: [1, 0, 0] },
  { name: "SE", direction: [Math.SQRT1_2, 0, Math.SQRT1_2] },
  { name: "S", direction: [0, 0, 1] },
  { name: "SW", direction: [-Math.SQRT1_2, 0, Math.SQRT1_2] },
  { name: "W", direction: [-1, 0, 0] },
  { name: "NW", direction: [-Math.SQRT1_2, 0, -Math.SQRT1_2] },
];

export function presetPosition(
  preset: Preset,
  target: THREE.Vector3,
  distance: number,
): THREE.Vector3 {
  const dir = new THREE.Vector3(...preset.direction);
  return target.clone().addScaledVector(dir, distance).add(new THREE.Vector3(0, distance * 0.35, 0));
}
