/** Wire types mirrored from the editor service. */

export type Triple = [number, number, number];

export interface SceneNodeDoc {
  id: number;
  owner: number;
  kind: string;
  min: Triple;
  size: Triple;
  rot: [number, number, number, number];
  material: string | null;
  content?: string;
  endpoints?: [Triple, Triple];
}

export interface ContainerDoc {
  owner: number;
  name: string;
  min: Triple;
  size: Triple;
}

export interface SceneDoc {
  nodes: SceneNodeDoc[];
  containers: ContainerDoc[];
}

export interface CameraDoc {
  position: Triple;
  orientation: [number, number, number, number];
  fovY: number;
  viewport: [number, number];
  near: number;
  far: number;
}

export interface MaterialDoc {
  id: string;
  kind: "color" | "texture" | "custom";
  rgba?: [number, number, number, number];
  path?: string;
}

export interface LanguageInfoDoc {
  name: string;
  kinds: { kind: string; depiction: string }[];
  materials: Record<string, MaterialDoc[]>;
}

export interface BoxDoc {
  min: Triple;
  size: Triple;
}

export interface InsertionContextDoc {
  kind: "cube" | "axis_strip" | "list_slot" | "matrix_cell";
  owner: number;
  container: string;
  box?: BoxDoc;
  axis?: "x" | "y" | "z";
  range?: [number, number];
  slotIndex?: number;
  cell?: [number, number];
}

export interface DofDoc {
  translate: ("x" | "y" | "z")[];
  rotate: ("x" | "y" | "z")[];
  scale: boolean;
}

export interface ConstructDoc {
  kind: string;
  id: number;
  pos?: Triple;
  children?: Record<string, ConstructDoc[]>;
}

export interface ProgramDoc {
  language: string;
  root: ConstructDoc;
}

export interface DiagnosticDoc {
  depiction?: string;
  code: string;
  location: string;
  message: string;
}
