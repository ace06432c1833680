/** Insertion flow: palette click fetches the valid contexts, each context
 * is drawn as a translucent highlight, and clicking one yields the /insert
 * request. Cube contexts include a plane the user slides along z to choose
 * a full 3D position. */

import * as THREE from "three";

import type { InsertionContextDoc, Triple } from "./types.js";

export interface InsertChoice {
  parentId: number;
  container: string;
  position: number | Triple;
}

/** Turn a clicked context into the /insert position.
 *
 * ``worldPoint`` is where the user clicked inside the context (only used by
 * cube and axis-strip contexts, which encode a continuous position);
 * list slots and matrix cells are discrete.
 */
export function insertChoiceFor(
  context: InsertionContextDoc,
  worldPoint?: Triple,
): InsertChoice {
  const base = { parentId: context.owner, container: context.container };
  switch (context.kind) {
    case "list_slot":
      return { ...base, position: context.slotIndex ?? 0 };
    case "matrix_cell": {
      const [col, row] = context.cell ?? [0, 0];
      return { ...base, position: [col, 0, row] };
    }
    case "cube": {
      const box = context.box!;
      const point = worldPoint ?? box.min;
      return {
        ...base,
        position: [
          point[0] - box.min[0],
          point[1] - box.min[1],
          point[2] - box.min[2],
        ],
      };
    }
    default: {
      // axis strip: the position along the strip's axis, zero elsewhere
      const box = context.box!;
      const axis = "xyz".indexOf(context.axis ?? "x");
      const point = worldPoint ?? box.min;
      const position: Triple = [0, 0, 0];
      position[axis] = point[axis] - box.min[axis];
      return { ...base, position };
    }
  }
}

export function contextHighlight(context: InsertionContextDoc): THREE.Group {
  const box = context.box;
  const group = new THREE.Group();
  group.userData.context = context;
  if (!box) return group;
  const size = box.size.map((v) => Math.max(v, 1e-3)) as Triple;
  const mesh = new THREE.Mesh(
    new THREE.BoxGeometry(...size),
    new THREE.MeshBasicMaterial({
      color: 0xf2e14c,
      transparent: true,
      opacity: 0.3,
      depthWrite: false,
    }),
  );
  mesh.position.set(
    box.min[0] + size[0] / 2,
    box.min[1] + size[1] / 2,
    box.min[2] + size[2] / 2,
  );
  group.add(mesh);
  if (context.kind === "cube") {
    // the movable z plane that pins the third coordinate of a 3D position
    const plane = new THREE.Mesh(
      new THREE.PlaneGeometry(size[0], size[1]),
      new THREE.MeshBasicMaterial({
        color: 0x4cc9f2,
        transparent: true,
        opacity: 0.35,
        side: THREE.DoubleSide,
      }),
    );
    plane.position.set(box.min[0] + size[0] / 2, box.min[1] + size[1] / 2, box.min[2] + size[2] / 2);
    plane.userData.zPlane = { minZ: box.min[2], maxZ: box.min[2] + size[2] };
    group.add(plane);
  }
  return group;
}

/** Slide a cube context's picking plane along z, clamped to the box. */
export function movePlaneZ(plane: THREE.Object3D, dz: number): number {
  const limits = plane.userData.zPlane as { minZ: number; maxZ: number };
  const z = Math.min(limits.maxZ, Math.max(limits.minZ, plane.position.z + dz));
  plane.position.z = z;
  return z;
}
