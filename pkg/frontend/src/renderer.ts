/** Canvas painter: draws the network, mode overlay, clue saturation, and
 * selection rings from the current state. Pure drawing; no game logic. */

import type { OverlayModel } from './overlay.js';
import type { NetworkDoc, Point } from './types.js';
import type { ViewState } from './state.js';

const COLORS = {
  edge: '#5b8db8',
  redEdge: '#d64545',
  clue: '#ff9f1c',
  node: '#4a6fa5',
  source: '#2e9e4f',
  target: '#e3b505',
  selection: '#7048e8',
  crossing: '#d64545',
  outOfBoxBanner: 'rgba(214, 69, 69, 0.85)',
};

export class CanvasRenderer {
  private readonly ctx: CanvasRenderingContext2D;

  constructor(private readonly canvas: HTMLCanvasElement) {
    const ctx = canvas.getContext('2d');
    if (!ctx) throw new Error('2d canvas context unavailable');
    this.ctx = ctx;
  }

  /** Scale chosen so the whole bounding box fits the canvas. */
  fitCamera(state: ViewState): void {
    const scale = Math.min(
      this.canvas.width / state.box.w,
      this.canvas.height / state.box.h,
    );
    state.camera = { scale, offsetX: 0, offsetY: 0 };
  }

  toScreen(state: ViewState, p: Point): Point {
    return {
      x: p.x * state.camera.scale + state.camera.offsetX,
      y: p.y * state.camera.scale + state.camera.offsetY,
    };
  }

  toWorld(state: ViewState, p: Point): Point {
    return {
      x: (p.x - state.camera.offsetX) / state.camera.scale,
      y: (p.y - state.camera.offsetY) / state.camera.scale,
    };
  }

  draw(
    state: ViewState,
    network: NetworkDoc,
    overlay: OverlayModel,
    hoverNode: string | null,
    hoverCrossingEdges: ReadonlySet<string> = new Set(),
  ): void {
    const { ctx } = this;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);

    for (const edge of network.edges) {
      const a = this.toScreen(state, state.positions[edge.tail]);
      const b = this.toScreen(state, state.positions[edge.head]);
      const isClue = overlay.clueEdgeIds.has(edge.id);
      const isHoverPair = hoverCrossingEdges.has(edge.id);
      ctx.strokeStyle = isClue
        ? COLORS.clue
        : isHoverPair || overlay.redEdgeIds.has(edge.id) ? COLORS.redEdge : COLORS.edge;
      ctx.lineWidth = isClue || isHoverPair ? 3 : 1.5;
      ctx.beginPath();
      ctx.moveTo(a.x, a.y);
      ctx.lineTo(b.x, b.y);
      ctx.stroke();
      if (edge.directed) this.arrowHead(a, b, ctx.strokeStyle);
    }

    for (const dot of overlay.crossingDots) {
      const p = this.toScreen(state, dot.point);
      ctx.fillStyle = COLORS.crossing;
      ctx.beginPath();
      ctx.arc(p.x, p.y, 4, 0, Math.PI * 2);
      ctx.fill();
    }

    for (const node of network.nodes) {
      const p = this.toScreen(state, state.positions[node.id]);
      const glyph = overlay.nodeGlyphs[node.id];
      const isClue = overlay.clueNodeIds.has(node.id);
      ctx.fillStyle = isClue
        ? COLORS.clue
        : glyph === 'source-triangle' ? COLORS.source
        : glyph === 'target-square' ? COLORS.target : COLORS.node;
      this.nodeGlyph(p, glyph);
      if (state.selection.has(node.id)) {
        ctx.strokeStyle = COLORS.selection;
        ctx.lineWidth = 2;
        ctx.beginPath();
        ctx.arc(p.x, p.y, 10, 0, Math.PI * 2);
        ctx.stroke();
      }
      if (hoverNode === node.id) {
        ctx.fillStyle = '#222';
        ctx.font = '12px sans-serif';
        ctx.fillText(String(overlay.hoverDegrees[node.id]), p.x + 10, p.y - 10);
      }
    }

    if (state.outOfBox) {
      ctx.fillStyle = COLORS.outOfBoxBanner;
      ctx.fillRect(0, 0, this.canvas.width, 26);
      ctx.fillStyle = '#fff';
      ctx.font = '13px sans-serif';
      ctx.fillText('A node is outside the bounding box: all scores are zero', 8, 18);
    }
  }

  private nodeGlyph(p: Point, glyph: string): void {
    const { ctx } = this;
    const r = 6;
    ctx.beginPath();
    if (glyph === 'source-triangle') {
      ctx.moveTo(p.x, p.y - r);
      ctx.lineTo(p.x - r, p.y + r);
      ctx.lineTo(p.x + r, p.y + r);
      ctx.closePath();
    } else if (glyph === 'target-square') {
      ctx.rect(p.x - r, p.y - r, 2 * r, 2 * r);
    } else {
      ctx.arc(p.x, p.y, r, 0, Math.PI * 2);
    }
    ctx.fill();
  }

  private arrowHead(a: Point, b: Point, color: string | CanvasGradient | CanvasPattern): void {
    const { ctx } = this;
    const angle = Math.atan2(b.y - a.y, b.x - a.x);
    const size = 7;
    ctx.fillStyle = color;
    ctx.beginPath();
    ctx.moveTo(b.x, b.y);
    ctx.lineTo(b.x - size * Math.cos(angle - 0.4), b.y - size * Math.sin(angle - 0.4));
    ctx.lineTo(b.x - size * Math.cos(angle + 0.4), b.y - size * Math.sin(angle + 0.4));
    ctx.closePath();
    ctx.fill();
  }
}
