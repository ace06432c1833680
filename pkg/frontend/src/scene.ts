/** Builds the three.js scene graph from a service scene export.
 *
 * The UI holds no layout logic: every transform comes straight from the
 * last /scene response. Nodes are drawn by shape kind with their material
 * color; containers become wireframe boxes plus axis-projection depth cues.
 */

import * as THREE from "three";

import type { LanguageInfoDoc, MaterialDoc, SceneDoc, SceneNodeDoc, Triple } from "./types.js";

export const HIGHLIGHT_COLOR = 0xffd54a;

export interface BuiltScene {
  group: THREE.Group;
  nodeObjects: Map<number, THREE.Object3D>;
}

/** material name -> color, resolved per owning depiction. */
export type MaterialResolver = (node: SceneNodeDoc) => MaterialDoc | undefined;

export function materialResolver(
  info: LanguageInfoDoc,
  constructDepictions: Map<number, string>,
): MaterialResolver {
  return (node) => {
    if (node.material === null) return undefined;
    const depiction = constructDepictions.get(node.owner);
    if (depiction === undefined) return undefined;
    return info.materials[depiction]?.find((m) => m.id === node.material);
  };
}

function colorOf(material: MaterialDoc | undefined): { color: number; opacity: number } {
  if (material?.kind === "color" && material.rgba) {
    const [r, g, b, a] = material.rgba;
    return { color: new THREE.Color(r, g, b).getHex(), opacity: a };
  }
  // texture/custom materials render as a placeholder tint; model3d has none
  if (material?.kind === "texture") return { color: 0x9b8ec4, opacity: 1 };
  if (material?.kind === "custom") return { color: 0x777777, opacity: 1 };
  return { color: 0xb5651d, opacity: 1 };
}

function centered(node: SceneNodeDoc): THREE.Vector3 {
  return new THREE.Vector3(
    node.min[0] + node.size[0] / 2,
    node.min[1] + node.size[1] / 2,
    node.min[2] + node.size[2] / 2,
  );
}

function surfaceMaterial(node: SceneNodeDoc, resolve: MaterialResolver): THREE.MeshLambertMaterial {
  const { color, opacity } = colorOf(resolve(node));
  return new THREE.MeshLambertMaterial({
    color,
    transparent: opacity < 1,
    opacity,
  });
}

function checkerMaterial(): THREE.MeshLambertMaterial {
  // placeholder look for shapes whose real surface cannot be rendered here
  return new THREE.MeshLambertMaterial({ color: 0x888888, wireframe: true });
}

function geometryFor(node: SceneNodeDoc): THREE.BufferGeometry {
  switch (node.kind) {
    case "sphere":
      return new THREE.SphereGeometry(0.5, 24, 16);
    case "cone":
      return new THREE.ConeGeometry(0.5, 1, 20);
    case "cylinder":
      return new THREE.CylinderGeometry(0.5, 0.5, 1, 20);
    case "torus":
      return new THREE.TorusGeometry(0.35, 0.15, 12, 24);
    case "quad":
      return new THREE.PlaneGeometry(1, 1);
    default:
      return new THREE.BoxGeometry(1, 1, 1);
  }
}

function lineObject(node: SceneNodeDoc, resolve: MaterialResolver): THREE.Object3D {
  const [a, b] = node.endpoints ?? [node.min, node.min];
  const from = new THREE.Vector3(...a);
  const to = new THREE.Vector3(...b);
  const { color } = colorOf(resolve(node));
  if (node.kind === "arrow") {
    const dir = to.clone().sub(from);
    const length = Math.max(dir.length(), 1e-6);
    return new THREE.ArrowHelper(dir.normalize(), from, length, color, length * 0.25, length * 0.12);
  }
  const geometry = new THREE.BufferGeometry().setFromPoints([from, to]);
  return new THREE.Line(geometry, new THREE.LineBasicMaterial({ color }));
}

function textSprite(node: SceneNodeDoc, resolve: MaterialResolver): THREE.Object3D {
  const mesh = new THREE.Mesh(
    new THREE.PlaneGeometry(1, 1),
    surfaceMaterial(node, resolve),
  );
  mesh.userData.content = node.content ?? "";
  if (typeof document !== "undefined") {
    const canvas = document.createElement("canvas");
    canvas.width = 256;
    canvas.height = 64;
    const ctx = canvas.getContext("2d");
    if (ctx) {
      ctx.fillStyle = "#ffffff";
      ctx.fillRect(0, 0, canvas.width, canvas.height);
      ctx.fillStyle = "#111111";
      ctx.font = "40px monospace";
      ctx.textBaseline = "middle";
      ctx.fillText(node.content ?? "", 8, canvas.height / 2);
      (mesh.material as THREE.MeshLambertMaterial).map = new THREE.CanvasTexture(canvas);
      (mesh.material as THREE.MeshLambertMaterial).needsUpdate = true;
    }
  }
  return mesh;
}

export function buildNodeObject(node: SceneNodeDoc, resolve: MaterialResolver): THREE.Object3D {
  let object: THREE.Object3D;
  if (node.kind === "line" || node.kind === "arrow") {
    object = lineObject(node, resolve);
  } else if (node.kind === "text") {
    object = textSprite(node, resolve);
    object.position.copy(centered(node));
    object.scale.set(Math.max(node.size[0], 1e-6), Math.max(node.size[1], 1e-6), 1);
  } else {
    const material = node.kind === "model3d" ? checkerMaterial() : surfaceMaterial(node, resolve);
    const mesh = new THREE.Mesh(geometryFor(node), material);
    mesh.position.copy(centered(node));
    mesh.scale.set(
      Math.max(node.size[0], 1e-6),
      Math.max(node.size[1], 1e-6),
      Math.max(node.size[2], 1e-6),
    );
    mesh.quaternion.set(...node.rot);
    object = mesh;
  }
  object.userData.nodeId = node.id;
  object.userData.constructId = node.owner;
  object.userData.kind = node.kind;
  return object;
}

function containerWireframe(min: Triple, size: Triple): THREE.Object3D {
  const geometry = new THREE.BoxGeometry(
    Math.max(size[0], 1e-6),
    Math.max(size[1], 1e-6),
    Math.max(size[2], 1e-6),
  );
  const edges = new THREE.EdgesGeometry(geometry);
  const wire = new THREE.LineSegments(
    edges,
    new THREE.LineBasicMaterial({ color: 0x4aa3ff }),
  );
  wire.position.set(min[0] + size[0] / 2, min[1] + size[1] / 2, min[2] + size[2] / 2);
  return wire;
}

/** Depth cue: the container's projection drawn as a bar on each axis. */
export function axisProjectionCues(min: Triple, size: Triple): THREE.Object3D[] {
  const cues: THREE.Object3D[] = [];
  for (let axis = 0; axis < 3; axis++) {
    const from = [0, 0, 0] as Triple;
    const to = [0, 0, 0] as Triple;
    from[axis] = min[axis];
    to[axis] = min[axis] + size[axis];
    const geometry = new THREE.BufferGeometry().setFromPoints([
      new THREE.Vector3(...from),
      new THREE.Vector3(...to),
    ]);
    const bar = new THREE.Line(
      geometry,
      new THREE.LineBasicMaterial({ color: 0x2255dd }),
    );
    bar.userData.depthCueAxis = "xyz"[axis];
    cues.push(bar);
  }
  return cues;
}

export function buildSceneGraph(scene: SceneDoc, resolve: MaterialResolver): BuiltScene {
  const group = new THREE.Group();
  group.name = "depiction-scene";
  const nodeObjects = new Map<number, THREE.Object3D>();
  for (const node of scene.nodes) {
    const object = buildNodeObject(node, resolve);
    nodeObjects.set(node.id, object);
    group.add(object);
  }
  for (const box of scene.containers) {
    const wire = containerWireframe(box.min, box.size);
    wire.userData.container = { owner: box.owner, name: box.name };
    group.add(wire);
    for (const cue of axisProjectionCues(box.min, box.size)) {
      group.add(cue);
    }
  }
  return { group, nodeObjects };
}

export function applyHighlight(built: BuiltScene, nodeIds: Set<number>): void {
  for (const [id, object] of built.nodeObjects) {
    const mesh = object as THREE.Mesh;
    const material = mesh.material as THREE.MeshLambertMaterial | undefined;
    if (material && "emissive" in material) {
      material.emissive = new THREE.Color(nodeIds.has(id) ? HIGHLIGHT_COLOR : 0x000000);
    }
  }
}
