/** Manipulation widgets, shaped by the construct's degrees of freedom.
 *
 * A construct movable along one axis gets a single arrow; one movable in a
 * plane gets two arrows plus the plane between them; full 3D translation
 * gets three arrows and three planes. Drags are projected onto the chosen
 * axis so the service only ever sees axis-aligned deltas.
 */

import * as THREE from "three";

import type { CameraDoc, DofDoc, Triple } from "./types.js";

export type AxisName = "x" | "y" | "z";

export const AXIS_DIRECTIONS: Record<AxisName, Triple> = {
  x: [1, 0, 0],
  y: [0, 1, 0],
  z: [0, 0, 1],
};

export const AXIS_COLORS: Record<AxisName, number> = {
  x: 0xe2453c,
  y: 0x6cc24a,
  z: 0x3c6fe2,
};

export interface WidgetSpec {
  arrows: AxisName[];
  planes: [AxisName, AxisName][];
}

/** Widget geometry implied by a DOF mask: arrows per axis, planes between
 * adjacent arrow pairs. No translation freedom means no widget at all. */
export function widgetSpec(dof: DofDoc): WidgetSpec {
  const arrows = [...dof.translate].sort() as AxisName[];
  const planes: [AxisName, AxisName][] = [];
  for (let i = 0; i < arrows.length; i++) {
    for (let j = i + 1; j < arrows.length; j++) {
      planes.push([arrows[i], arrows[j]]);
    }
  }
  return { arrows, planes };
}

/** World-units-per-pixel at a given view depth (perspective). */
export function worldPerPixel(camera: CameraDoc, depth: number): number {
  return (2 * depth * Math.tan(camera.fovY / 2)) / camera.viewport[1];
}

/** Project a screen-space drag onto one world axis.
 *
 * The axis is projected into the screen; the drag's component along that
 * direction, scaled by the world size of a pixel at the grab depth, is the
 * world-space movement along the axis.
 */
export function dragDeltaAlongAxis(
  axis: AxisName,
  camera: CameraDoc,
  screenDx: number,
  screenDy: number,
  grabDepth: number,
): Triple {
  const orientation = new THREE.Quaternion(...camera.orientation);
  const axisWorld = new THREE.Vector3(...AXIS_DIRECTIONS[axis]);
  const axisView = axisWorld.clone().applyQuaternion(orientation.clone().invert());
  // screen y grows downward
  const screenAxis = new THREE.Vector2(axisView.x, -axisView.y);
  if (screenAxis.lengthSq() < 1e-12) {
    return [0, 0, 0];
  }
  screenAxis.normalize();
  const along = screenDx * screenAxis.x + screenDy * screenAxis.y;
  const distance = along * worldPerPixel(camera, grabDepth);
  const delta: Triple = [0, 0, 0];
  delta["xyz".indexOf(axis)] = distance;
  return delta;
}

export function buildWidget(spec: WidgetSpec, origin: THREE.Vector3, scale: number): THREE.Group {
  const group = new THREE.Group();
  group.name = "widget";
  group.position.copy(origin);
  for (const axis of spec.arrows) {
    const dir = new THREE.Vector3(...AXIS_DIRECTIONS[axis]);
    const arrow = new THREE.ArrowHelper(dir, new THREE.Vector3(), scale, AXIS_COLORS[axis]);
    arrow.userData.widgetAxis = axis;
    group.add(arrow);
  }
  for (const [a, b] of spec.planes) {
    const plane = new THREE.Mesh(
      new THREE.PlaneGeometry(scale * 0.4, scale * 0.4),
      new THREE.MeshBasicMaterial({
        color: 0xcccc44,
        transparent: true,
        opacity: 0.4,
        side: THREE.DoubleSide,
      }),
    );
    const va = new THREE.Vector3(...AXIS_DIRECTIONS[a]);
    const vb = new THREE.Vector3(...AXIS_DIRECTIONS[b]);
    plane.position.copy(va.clone().add(vb).multiplyScalar(scale * 0.3));
    plane.lookAt(plane.position.clone().add(va.clone().cross(vb)));
    plane.userData.widgetPlane = [a, b];
    group.add(plane);
  }
  return group;
}
