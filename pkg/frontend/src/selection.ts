/** Multi-selection tools: the screen circle (cylinder metaphor) and the
 * free-form lasso polygon. Both only collect 2D screen geometry; the
 * service decides what the expanded volume encloses. */

export interface CylinderPayload {
  mode: "cylinder";
  center: [number, number];
  radius: number;
}

export interface LassoPayload {
  mode: "lasso";
  polygon: [number, number][];
}

export class CircleSelection {
  private center: [number, number] | null = null;
  private edge: [number, number] | null = null;

  begin(x: number, y: number): void {
    this.center = [x, y];
    this.edge = [x, y];
  }

  update(x: number, y: number): void {
    if (this.center) {
      this.edge = [x, y];
    }
  }

  get radius(): number {
    if (!this.center || !this.edge) return 0;
    const dx = this.edge[0] - this.center[0];
    const dy = this.edge[1] - this.center[1];
    return Math.hypot(dx, dy);
  }

  /** Payload for /select, or null when the circle is degenerate. */
  finish(): CylinderPayload | null {
    if (!this.center || this.radius <= 0) {
      this.center = this.edge = null;
      return null;
    }
    const payload: CylinderPayload = {
      mode: "cylinder",
      center: this.center,
      radius: this.radius,
    };
    this.center = this.edge = null;
    return payload;
  }
}

export class LassoSelection {
  private points: [number, number][] = [];

  add(x: number, y: number): void {
    const last = this.points[this.points.length - 1];
    if (last && last[0] === x && last[1] === y) return;
    this.points.push([x, y]);
  }

  get path(): readonly [number, number][] {
    return this.points;
  }

  /** Payload for /select; degenerate lassos (< 3 points) are discarded. */
  finish(): LassoPayload | null {
    const polygon = this.points;
    this.points = [];
    if (polygon.length < 3) return null;
    return { mode: "lasso", polygon };
  }
}
