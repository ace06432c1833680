import { describe, expect, it } from "vitest";
import * as THREE from "three";

import {
  applyHighlight,
  axisProjectionCues,
  buildSceneGraph,
  materialResolver,
} from "../src/scene.js";
import type { LanguageInfoDoc, SceneDoc } from "../src/types.js";

const info: LanguageInfoDoc = {
  name: "demo",
  kinds: [
    { kind: "Root", depiction: "frame" },
    { kind: "Child", depiction: "pellet" },
  ],
  materials: {
    frame: [{ id: "body", kind: "color", rgba: [0.2, 0.4, 0.9, 0.5] }],
    pellet: [{ id: "body", kind: "color", rgba: [1, 0, 0, 1] }],
  },
};

const sampleScene: SceneDoc = {
  nodes: [
    {
      id: 0,
      owner: 0,
      kind: "box",
      min: [0, 0, 0],
      size: [4, 2, 2],
      rot: [0, 0, 0, 1],
      material: "body",
    },
    {
      id: 1,
      owner: 7,
      kind: "sphere",
      min: [1, 0.5, 0.5],
      size: [1, 1, 1],
      rot: [0, 0, 0, 1],
      material: "body",
    },
    {
      id: 2,
      owner: 0,
      kind: "arrow",
      min: [0, 0, 0],
      size: [2, 1, 0],
      rot: [0, 0, 0, 1],
      material: null,
      endpoints: [
        [2, 1, 0],
        [0, 0, 0],
      ],
    },
  ],
  containers: [{ owner: 0, name: "c", min: [0.5, 0.25, 0.25], size: [3, 1.5, 1.5] }],
};

function resolver() {
  return materialResolver(
    info,
    new Map([
      [0, "frame"],
      [7, "pellet"],
    ]),
  );
}

describe("scene graph building", () => {
  it("creates one object per node with transforms from the response", () => {
    const built = buildSceneGraph(sampleScene, resolver());
    expect(built.nodeObjects.size).toBe(3);
    const box = built.nodeObjects.get(0) as THREE.Mesh;
    expect(box.position.toArray()).toEqual([2, 1, 1]); // min + size/2
    expect(box.scale.toArray()).toEqual([4, 2, 2]);
    expect(box.userData.constructId).toBe(0);
  });

  it("resolves material colors per owning depiction", () => {
    const built = buildSceneGraph(sampleScene, resolver());
    const box = built.nodeObjects.get(0) as THREE.Mesh;
    const sphere = built.nodeObjects.get(1) as THREE.Mesh;
    const boxMaterial = box.material as THREE.MeshLambertMaterial;
    const sphereMaterial = sphere.material as THREE.MeshLambertMaterial;
    // same material id, different depictions, different colors
    expect(boxMaterial.color.getHex()).not.toBe(sphereMaterial.color.getHex());
    expect(boxMaterial.transparent).toBe(true); // alpha 0.5
    expect(sphereMaterial.transparent).toBe(false);
  });

  it("orients arrows from their endpoints, not the box diagonal", () => {
    const built = buildSceneGraph(sampleScene, resolver());
    const arrow = built.nodeObjects.get(2)!;
    expect(arrow).toBeInstanceOf(THREE.ArrowHelper);
    expect(arrow.position.toArray()).toEqual([2, 1, 0]); // tail at first endpoint
  });

  it("draws container wireframes and three axis-projection cues", () => {
    const built = buildSceneGraph(sampleScene, resolver());
    const extra = built.group.children.filter((o) => !("nodeId" in o.userData));
    const wires = extra.filter((o) => o.userData.container);
    const cues = extra.filter((o) => o.userData.depthCueAxis);
    expect(wires.length).toBe(1);
    expect(cues.map((c) => c.userData.depthCueAxis).sort()).toEqual(["x", "y", "z"]);
  });

  it("axis cues span exactly the container projection", () => {
    const cues = axisProjectionCues([1, 2, 3], [4, 5, 6]);
    const x = cues[0] as THREE.Line;
    const positions = (x.geometry.getAttribute("position") as THREE.BufferAttribute).array;
    expect(Array.from(positions.slice(0, 3))).toEqual([1, 0, 0]);
    expect(Array.from(positions.slice(3, 6))).toEqual([5, 0, 0]);
  });

  it("highlights exactly the selected nodes", () => {
    const built = buildSceneGraph(sampleScene, resolver());
    applyHighlight(built, new Set([1]));
    const box = built.nodeObjects.get(0) as THREE.Mesh;
    const sphere = built.nodeObjects.get(1) as THREE.Mesh;
    expect((sphere.material as THREE.MeshLambertMaterial).emissive.getHex()).not.toBe(0);
    expect((box.material as THREE.MeshLambertMaterial).emissive.getHex()).toBe(0);
  });
});
