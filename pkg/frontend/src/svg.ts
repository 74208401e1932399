/** Minimal SVG line-plot builder: enough for multi-panel physics figures. */

export interface PanelBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface Series {
  x: number[];
  y: number[];
  color: string;
  width?: number;
  dash?: string;
  label?: string;
  markers?: boolean;
}

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step0 = span / Math.max(count - 1, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * mag);
  const step = candidates.find((s) => span / s <= count + 1) ?? candidates[4];
  const first = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = first; v <= hi + 1e-12 * span; v += step) {
    out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return out;
}

const fmtTick = (v: number) =>
  Math.abs(v) >= 1e4 || (v !== 0 && Math.abs(v) < 1e-3)
    ? v.toExponential(1)
    : String(Number(v.toPrecision(6)));

export class Panel {
  private parts: string[] = [];
  readonly xlo: number;
  readonly xhi: number;
  readonly ylo: number;
  readonly yhi: number;

  constructor(
    readonly box: PanelBox,
    xRange: [number, number],
    yRange: [number, number],
    readonly opts: { xlabel?: string; ylabel?: string; title?: string } = {},
  ) {
    const pad = (r: [number, number]): [number, number] => {
      const [a, b] = r;
      if (a === b) return [a - 1, b + 1];
      const m = 0.04 * (b - a);
      return [a - m, b + m];
    };
    [this.xlo, this.xhi] = pad(xRange);
    [this.ylo, this.yhi] = pad(yRange);
  }

  sx(x: number): number {
    return this.box.x + ((x - this.xlo) / (this.xhi - this.xlo)) * this.box.width;
  }

  sy(y: number): number {
    return this.box.y + this.box.height
      - ((y - this.ylo) / (this.yhi - this.ylo)) * this.box.height;
  }

  polyline(s: Series): void {
    const pts: string[] = [];
    for (let i = 0; i < s.x.length; i++) {
      if (Number.isFinite(s.x[i]) && Number.isFinite(s.y[i])) {
        pts.push(`${this.sx(s.x[i]).toFixed(2)},${this.sy(s.y[i]).toFixed(2)}`);
      }
    }
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    this.parts.push(
      `<polyline fill="none" stroke="${s.color}" stroke-width="${s.width ?? 1.2}"` +
      `${dash} points="${pts.join(" ")}"/>`,
    );
    if (s.markers) {
      for (let i = 0; i < s.x.length; i++) {
        this.parts.push(
          `<circle cx="${this.sx(s.x[i]).toFixed(2)}" ` +
          `cy="${this.sy(s.y[i]).toFixed(2)}" r="2.2" fill="${s.color}"/>`,
        );
      }
    }
  }

  vline(x: number, color: string, dash = "4 3", label?: string): void {
    const X = this.sx(x).toFixed(2);
    this.parts.push(
      `<line x1="${X}" y1="${this.box.y}" x2="${X}" ` +
      `y2="${this.box.y + this.box.height}" stroke="${color}" ` +
      `stroke-width="1" stroke-dasharray="${dash}"/>`,
    );
    if (label) {
      this.parts.push(
        `<text x="${(this.sx(x) + 4).toFixed(2)}" y="${this.box.y + 12}" ` +
        `font-size="10" fill="${color}">${esc(label)}</text>`,
      );
    }
  }

  legend(entries: { label: string; color: string; dash?: string }[]): void {
    let y = this.box.y + 14;
    const x = this.box.x + this.box.width - 118;
    for (const e of entries) {
      const dash = e.dash ? ` stroke-dasharray="${e.dash}"` : "";
      this.parts.push(
        `<line x1="${x}" y1="${y - 4}" x2="${x + 22}" y2="${y - 4}" ` +
        `stroke="${e.color}" stroke-width="1.6"${dash}/>`,
        `<text x="${x + 27}" y="${y}" font-size="10" fill="#222">${esc(e.label)}</text>`,
      );
      y += 14;
    }
  }

  render(): string {
    const { x, y, width, height } = this.box;
    const frame: string[] = [
      `<rect x="${x}" y="${y}" width="${width}" height="${height}" ` +
      `fill="none" stroke="#444" stroke-width="1"/>`,
    ];
    for (const t of niceTicks(this.xlo, this.xhi)) {
      const X = this.sx(t).toFixed(2);
      frame.push(
        `<line x1="${X}" y1="${y + height}" x2="${X}" y2="${y + height + 4}" stroke="#444"/>`,
        `<text x="${X}" y="${y + height + 15}" font-size="9" text-anchor="middle" fill="#222">${fmtTick(t)}</text>`,
      );
    }
    for (const t of niceTicks(this.ylo, this.yhi)) {
      const Y = this.sy(t).toFixed(2);
      frame.push(
        `<line x1="${x - 4}" y1="${Y}" x2="${x}" y2="${Y}" stroke="#444"/>`,
        `<text x="${x - 7}" y="${Y}" font-size="9" text-anchor="end" dominant-baseline="middle" fill="#222">${fmtTick(t)}</text>`,
      );
    }
    if (this.opts.xlabel) {
      frame.push(
        `<text x="${x + width / 2}" y="${y + height + 30}" font-size="11" ` +
        `text-anchor="middle" fill="#000">${esc(this.opts.xlabel)}</text>`,
      );
    }
    if (this.opts.ylabel) {
      const Y = y + height / 2;
      frame.push(
        `<text x="${x - 36}" y="${Y}" font-size="11" text-anchor="middle" ` +
        `transform="rotate(-90 ${x - 36} ${Y})" fill="#000">${esc(this.opts.ylabel)}</text>`,
      );
    }
    if (this.opts.title) {
      frame.push(
        `<text x="${x + width / 2}" y="${y - 6}" font-size="12" ` +
        `text-anchor="middle" fill="#000">${esc(this.opts.title)}</text>`,
      );
    }
    return frame.join("\n") + "\n" + this.parts.join("\n");
  }
}

export function svgDocument(width: number, height: number, panels: Panel[]): string {
  const body = panels.map((p) => p.render()).join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n${body}\n</svg>\n`
  );
}
