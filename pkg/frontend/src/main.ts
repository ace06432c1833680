/** Browser entry point: renders the scene over WebGL and drives the editor
 * service. Every displayed transform comes from the last /scene response. */

import * as THREE from "three";
import { OrbitControls } from "three/examples/jsm/controls/OrbitControls.js";

import { ApiError, EditorClient } from "./api.js";
import { CARDINAL_PRESETS, cameraToDoc, presetPosition } from "./camera.js";
import { contextHighlight, insertChoiceFor } from "./insert.js";
import {
  applyHighlight,
  buildSceneGraph,
  materialResolver,
  type BuiltScene,
} from "./scene.js";
import { CircleSelection, LassoSelection } from "./selection.js";
import { buildWidget, dragDeltaAlongAxis, widgetSpec, type AxisName } from "./widgets.js";
import type {
  ConstructDoc,
  InsertionContextDoc,
  SceneDoc,
  Triple,
} from "./types.js";

type Mode = "click" | "cylinder" | "lasso" | "insert";

const params = new URLSearchParams(location.search);
const BASE_URL = params.get("api") ?? localStorage.getItem("depict3d.api") ?? "http://127.0.0.1:8000";
const FIXTURE = params.get("language") ?? "petri";

const client = new EditorClient(BASE_URL);

const canvas = document.getElementById("view") as HTMLCanvasElement;
const paletteEl = document.getElementById("palette")!;
const statusEl = document.getElementById("status")!;
const toastEl = document.getElementById("toast")!;
const presetsEl = document.getElementById("presets")!;

const renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
const world = new THREE.Scene();
world.background = new THREE.Color(0x10141c);
world.add(new THREE.AmbientLight(0xffffff, 0.7));
const sun = new THREE.DirectionalLight(0xffffff, 1.2);
sun.position.set(20, 40, 25);
world.add(sun);
world.add(new THREE.GridHelper(60, 60, 0x333a48, 0x232833));
world.add(new THREE.AxesHelper(8));

const camera = new THREE.PerspectiveCamera(60, 1, 0.1, 500);
camera.position.set(24, 18, 30);
const controls = new OrbitControls(camera, canvas);
controls.target.set(10, 5, 7);

// mini axes gizmo in the corner, rotating with the camera
const gizmoScene = new THREE.Scene();
gizmoScene.add(new THREE.AxesHelper(1));
const gizmoCamera = new THREE.PerspectiveCamera(50, 1, 0.1, 10);

let sessionId = "";
let built: BuiltScene | null = null;
let sceneDoc: SceneDoc | null = null;
let mode: Mode = "click";
let selectedConstruct: number | null = null;
let selectedNodes = new Set<number>();
let widget: THREE.Group | null = null;
let dragAxis: AxisName | null = null;
let dragStart: [number, number] | null = null;
let grabDepth = 10;
let contextObjects: THREE.Group[] = [];
let pendingInsertKind: string | null = null;
let mutationInFlight = false;
const circle = new CircleSelection();
const lasso = new LassoSelection();
const constructDepictions = new Map<number, string>();
const constructKinds = new Map<number, string>();
let kindToDepiction = new Map<string, string>();

function viewport(): [number, number] {
  return [canvas.clientWidth, canvas.clientHeight];
}

function toast(message: string): void {
  toastEl.textContent = message;
  toastEl.classList.add("show");
  setTimeout(() => toastEl.classList.remove("show"), 2600);
}

function setStatus(message: string): void {
  statusEl.textContent = message;
}

function indexConstructs(doc: ConstructDoc): void {
  constructKinds.set(doc.id, doc.kind);
  const depiction = kindToDepiction.get(doc.kind);
  if (depiction) constructDepictions.set(doc.id, depiction);
  for (const kids of Object.values(doc.children ?? {})) {
    for (const kid of kids) indexConstructs(kid);
  }
}

async function refreshConstructIndex(): Promise<void> {
  const program = await client.program(sessionId);
  constructKinds.clear();
  constructDepictions.clear();
  indexConstructs(program.root);
}

function showScene(doc: SceneDoc): void {
  if (built) world.remove(built.group);
  built = buildSceneGraph(doc, materialResolver(languageInfo, constructDepictions));
  sceneDoc = doc;
  world.add(built.group);
  applyHighlight(built, selectedNodes);
  refreshWidget();
}

async function applySceneResponse(response: { scene: SceneDoc }): Promise<void> {
  await refreshConstructIndex();
  showScene(response.scene);
}

function clearContexts(): void {
  for (const object of contextObjects) world.remove(object);
  contextObjects = [];
  pendingInsertKind = null;
}

function refreshWidget(): void {
  if (widget) {
    world.remove(widget);
    widget = null;
  }
  if (selectedConstruct === null || !sceneDoc) return;
  const nodes = sceneDoc.nodes.filter((n) => n.owner === selectedConstruct);
  if (!nodes.length) return;
  const lo = new THREE.Vector3(Infinity, Infinity, Infinity);
  const hi = new THREE.Vector3(-Infinity, -Infinity, -Infinity);
  for (const n of nodes) {
    lo.min(new THREE.Vector3(...n.min));
    hi.max(new THREE.Vector3(n.min[0] + n.size[0], n.min[1] + n.size[1], n.min[2] + n.size[2]));
  }
  const center = lo.clone().add(hi).multiplyScalar(0.5);
  client
    .dof(sessionId, selectedConstruct)
    .then((dof) => {
      const spec = widgetSpec(dof);
      if (!spec.arrows.length) return; // read-only node: no widget
      widget = buildWidget(spec, center, Math.max(hi.distanceTo(lo) * 0.6, 2));
      world.add(widget);
    })
    .catch(() => undefined);
}

async function runMutation(action: () => Promise<{ scene: SceneDoc }>): Promise<void> {
  if (mutationInFlight) return; // one in-flight mutation per session
  mutationInFlight = true;
  try {
    const response = await action();
    await applySceneResponse(response);
  } catch (error) {
    if (error instanceof ApiError) {
      canvas.classList.add("shake");
      setTimeout(() => canvas.classList.remove("shake"), 400);
      toast(`${error.code}: ${error.message}`);
    } else {
      toast(String(error));
    }
  } finally {
    mutationInFlight = false;
  }
}

function screenPos(event: PointerEvent): [number, number] {
  const rect = canvas.getBoundingClientRect();
  return [event.clientX - rect.left, event.clientY - rect.top];
}

function widgetHit(x: number, y: number): AxisName | null {
  if (!widget) return null;
  const caster = new THREE.Raycaster();
  const [w, h] = viewport();
  caster.setFromCamera(new THREE.Vector2((x / w) * 2 - 1, 1 - (y / h) * 2), camera);
  for (const hit of caster.intersectObjects(widget.children, true)) {
    let object: THREE.Object3D | null = hit.object;
    while (object) {
      if (object.userData.widgetAxis) return object.userData.widgetAxis as AxisName;
      object = object.parent;
    }
  }
  return null;
}

function contextHit(x: number, y: number): { context: InsertionContextDoc; point: THREE.Vector3 } | null {
  const caster = new THREE.Raycaster();
  const [w, h] = viewport();
  caster.setFromCamera(new THREE.Vector2((x / w) * 2 - 1, 1 - (y / h) * 2), camera);
  for (const group of contextObjects) {
    const hits = caster.intersectObjects(group.children, true);
    if (hits.length) {
      return { context: group.userData.context as InsertionContextDoc, point: hits[0].point };
    }
  }
  return null;
}

canvas.addEventListener("pointerdown", (event) => {
  const [x, y] = screenPos(event);
  if (mode === "cylinder") {
    circle.begin(x, y);
    controls.enabled = false;
    return;
  }
  if (mode === "lasso") {
    lasso.add(x, y);
    return;
  }
  if (mode === "insert") {
    const hit = contextHit(x, y);
    if (hit && pendingInsertKind) {
      const choice = insertChoiceFor(hit.context, hit.point.toArray() as Triple);
      const kind = pendingInsertKind;
      clearContexts();
      void runMutation(async () => {
        const response = await client.insert(sessionId, { ...choice, kind });
        selectedConstruct = response.newId;
        return response;
      });
      mode = "click";
    }
    return;
  }
  const axis = widgetHit(x, y);
  if (axis) {
    dragAxis = axis;
    dragStart = [x, y];
    grabDepth = camera.position.distanceTo(controls.target);
    controls.enabled = false;
  }
});

canvas.addEventListener("pointermove", (event) => {
  if (mode === "cylinder") {
    const [x, y] = screenPos(event);
    circle.update(x, y);
  }
});

canvas.addEventListener("pointerup", (event) => {
  const [x, y] = screenPos(event);
  if (mode === "cylinder") {
    controls.enabled = true;
    const payload = circle.finish();
    if (payload) {
      void client
        .selectCylinder(sessionId, payload.center, payload.radius, cameraToDoc(camera, viewport()))
        .then((response) => {
          selectedNodes = new Set(response.nodeIds);
          if (built) applyHighlight(built, selectedNodes);
        })
        .catch((error) => toast(String(error)));
    }
    return;
  }
  if (dragAxis && dragStart) {
    const delta = dragDeltaAlongAxis(
      dragAxis,
      cameraToDoc(camera, viewport()),
      x - dragStart[0],
      y - dragStart[1],
      grabDepth,
    );
    const target = selectedConstruct;
    dragAxis = null;
    dragStart = null;
    controls.enabled = true;
    if (target !== null && delta.some((v) => v !== 0)) {
      void runMutation(() => client.move(sessionId, target, delta));
    }
    return;
  }
  if (mode === "click") {
    void client
      .pick(sessionId, x, y, cameraToDoc(camera, viewport()))
      .then((hit) => {
        if (hit.nodeId === null) {
          selectedConstruct = null;
          selectedNodes = new Set();
        } else {
          selectedConstruct = hit.constructId ?? null;
          selectedNodes = new Set(
            sceneDoc?.nodes.filter((n) => n.owner === hit.constructId).map((n) => n.id) ?? [],
          );
        }
        if (built) applyHighlight(built, selectedNodes);
        refreshWidget();
        setStatus(
          selectedConstruct === null
            ? "nothing selected"
            : `selected construct ${selectedConstruct} (${constructKinds.get(selectedConstruct) ?? "?"})`,
        );
      })
      .catch((error) => toast(String(error)));
  }
});

canvas.addEventListener("dblclick", () => {
  if (mode === "lasso") {
    const payload = lasso.finish();
    if (!payload) return; // degenerate lasso is discarded silently
    void client
      .selectLasso(sessionId, payload.polygon, cameraToDoc(camera, viewport()))
      .then((response) => {
        selectedNodes = new Set(response.nodeIds);
        if (built) applyHighlight(built, selectedNodes);
      })
      .catch((error) => toast(String(error)));
  }
});

window.addEventListener("keydown", (event) => {
  if (event.key === "Delete" && selectedConstruct !== null) {
    const target = selectedConstruct;
    selectedConstruct = null;
    selectedNodes = new Set();
    void runMutation(() => client.delete(sessionId, target));
  }
  if (event.key === "z" && (event.ctrlKey || event.metaKey)) {
    void runMutation(() => (event.shiftKey ? client.redo(sessionId) : client.undo(sessionId)));
  }
});

function bindToolbar(): void {
  for (const button of document.querySelectorAll<HTMLButtonElement>("[data-mode]")) {
    button.onclick = () => {
      mode = button.dataset.mode as Mode;
      clearContexts();
      setStatus(`tool: ${mode}`);
    };
  }
  document.getElementById("undo")!.onclick = () => void runMutation(() => client.undo(sessionId));
  document.getElementById("redo")!.onclick = () => void runMutation(() => client.redo(sessionId));
}

function buildPresets(): void {
  for (const preset of CARDINAL_PRESETS) {
    const button = document.createElement("button");
    button.textContent = preset.name;
    button.onclick = () => {
      const distance = camera.position.distanceTo(controls.target);
      camera.position.copy(presetPosition(preset, controls.target, distance));
      camera.lookAt(controls.target);
    };
    presetsEl.appendChild(button);
  }
}

async function startInsertFlow(kind: string): Promise<void> {
  clearContexts();
  try {
    const { contexts } = await client.insertionContexts(sessionId, kind);
    if (!contexts.length) {
      toast(`no valid position for ${kind}`);
      return;
    }
    mode = "insert";
    pendingInsertKind = kind;
    for (const context of contexts) {
      const highlight = contextHighlight(context);
      contextObjects.push(highlight);
      world.add(highlight);
    }
    setStatus(`click a highlighted context to insert ${kind}`);
  } catch (error) {
    toast(String(error));
  }
}

let languageInfo: Awaited<ReturnType<EditorClient["languageInfo"]>>;

async function boot(): Promise<void> {
  setStatus(`connecting to ${BASE_URL} ...`);
  const session = await client.createSession({ language: FIXTURE });
  sessionId = session.sessionId;
  languageInfo = await client.languageInfo(sessionId);
  kindToDepiction = new Map(languageInfo.kinds.map((k) => [k.kind, k.depiction]));
  for (const { kind } of languageInfo.kinds) {
    const button = document.createElement("button");
    button.textContent = kind;
    button.onclick = () => void startInsertFlow(kind);
    paletteEl.appendChild(button);
  }
  bindToolbar();
  buildPresets();
  await refreshConstructIndex();
  showScene(await client.scene(sessionId));
  setStatus(`session ${sessionId} (${FIXTURE})`);
}

function resize(): void {
  const width = canvas.clientWidth;
  const height = canvas.clientHeight;
  renderer.setSize(width, height, false);
  camera.aspect = width / height;
  camera.updateProjectionMatrix();
}

function frame(): void {
  requestAnimationFrame(frame);
  controls.update();
  resize();
  renderer.setViewport(0, 0, canvas.clientWidth, canvas.clientHeight);
  renderer.setScissorTest(false);
  renderer.render(world, camera);
  // corner gizmo
  gizmoCamera.position.copy(camera.position).sub(controls.target).setLength(3);
  gizmoCamera.lookAt(0, 0, 0);
  const inset = 90;
  renderer.clearDepth();
  renderer.setScissorTest(true);
  renderer.setScissor(canvas.clientWidth - inset, 0, inset, inset);
  renderer.setViewport(canvas.clientWidth - inset, 0, inset, inset);
  renderer.render(gizmoScene, gizmoCamera);
  renderer.setScissorTest(false);
}

boot()
  .then(frame)
  .catch((error) => {
    setStatus("failed to start");
    const banner = document.getElementById("error-banner")!;
    banner.textContent = `cannot reach editor service at ${BASE_URL}: ${error}`;
    banner.classList.add("show");
  });
