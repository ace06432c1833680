/** Thin typed client for the editor service. All state lives server-side;
 * the UI only posts edits and re-renders the scenes it gets back. */

import type {
  CameraDoc,
  DiagnosticDoc,
  DofDoc,
  InsertionContextDoc,
  LanguageInfoDoc,
  ProgramDoc,
  SceneDoc,
  Triple,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export interface PickResult {
  nodeId: number | null;
  t: number | null;
  constructId?: number;
}

export class EditorClient {
  constructor(readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = "E_HTTP";
      let message = response.statusText;
      try {
        const doc = await response.json();
        code = doc.code ?? code;
        message = doc.message ?? message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  createSession(body: {
    language: string | object;
    program?: object;
    depictions?: Record<string, object>;
  }): Promise<{ sessionId: string }> {
    return this.request("POST", "/session", body);
  }

  scene(sessionId: string): Promise<SceneDoc> {
    return this.request("GET", `/session/${sessionId}/scene`);
  }

  languageInfo(sessionId: string): Promise<LanguageInfoDoc> {
    return this.request("GET", `/session/${sessionId}/language`);
  }

  violations(sessionId: string): Promise<{ diagnostics: DiagnosticDoc[] }> {
    return this.request("GET", `/session/${sessionId}/violations`);
  }

  insertionContexts(sessionId: string, kind: string): Promise<{ contexts: InsertionContextDoc[] }> {
    return this.request("GET", `/session/${sessionId}/insertion-contexts?kind=${encodeURIComponent(kind)}`);
  }

  dof(sessionId: string, constructId: number): Promise<DofDoc> {
    return this.request("GET", `/session/${sessionId}/dof?constructId=${constructId}`);
  }

  insert(
    sessionId: string,
    body: { parentId: number; container: string; kind: string; position: number | Triple },
  ): Promise<{ newId: number; scene: SceneDoc }> {
    return this.request("POST", `/session/${sessionId}/insert`, body);
  }

  move(sessionId: string, constructId: number, delta: Triple): Promise<{ scene: SceneDoc }> {
    return this.request("POST", `/session/${sessionId}/move`, { constructId, delta });
  }

  delete(sessionId: string, constructId: number): Promise<{ scene: SceneDoc }> {
    return this.request("POST", `/session/${sessionId}/delete`, { constructId });
  }

  pick(sessionId: string, px: number, py: number, camera: CameraDoc): Promise<PickResult> {
    return this.request("POST", `/session/${sessionId}/pick`, { px, py, camera });
  }

  selectCylinder(
    sessionId: string,
    center: [number, number],
    radius: number,
    camera: CameraDoc,
  ): Promise<{ nodeIds: number[] }> {
    return this.request("POST", `/session/${sessionId}/select`, {
      mode: "cylinder",
      center,
      radius,
      camera,
    });
  }

  selectLasso(
    sessionId: string,
    polygon: [number, number][],
    camera: CameraDoc,
  ): Promise<{ nodeIds: number[] }> {
    return this.request("POST", `/session/${sessionId}/select`, { mode: "lasso", polygon, camera });
  }

  undo(sessionId: string): Promise<{ scene: SceneDoc }> {
    return this.request("POST", `/session/${sessionId}/undo`);
  }

  redo(sessionId: string): Promise<{ scene: SceneDoc }> {
    return this.request("POST", `/session/${sessionId}/redo`);
  }

  program(sessionId: string): Promise<ProgramDoc> {
    return this.request("GET", `/session/${sessionId}/program`);
  }

  putProgram(sessionId: string, doc: ProgramDoc): Promise<{ scene: SceneDoc }> {
    return this.request("PUT", `/session/${sessionId}/program`, doc);
  }
}
