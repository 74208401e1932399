import { mkdirSync, writeFileSync, readdirSync, existsSync } from "node:fs";
import { dirname, join } from "node:path";

import { column, readCsv, readSidecar, Table } from "./csv.js";
import { Panel, svgDocument } from "./svg.js";

const PALETTE = ["#1b7837", "#d95f02", "#4575b4", "#d73027", "#762a83", "#1a1a1a"];

function writeSvg(outPath: string, doc: string): string {
  mkdirSync(dirname(outPath), { recursive: true });
  writeFileSync(outPath, doc);
  return outPath;
}

const extent = (xs: number[]): [number, number] => {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of xs) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
};

/** Edge-state probability per n, one entry per mid-gap state block. */
export function groupStates(states: Table, path: string):
  { n: number[]; prob: number[] }[] {
  const v = column(states, "v", path);
  const n = column(states, "n", path);
  const re = column(states, "re", path);
  const im = column(states, "im", path);
  // rows come in blocks of D = 2 * (#distinct n) consecutive rows per state
  const distinct = new Set(n).size;
  const block = 2 * distinct;
  if (block === 0 || v.length % block !== 0) {
    throw new Error(`${path}: rows (${v.length}) do not tile into state blocks`);
  }
  const out: { n: number[]; prob: number[] }[] = [];
  for (let b = 0; b < v.length; b += block) {
    const perN = new Map<number, number>();
    for (let i = b; i < b + block; i++) {
      perN.set(n[i], (perN.get(n[i]) ?? 0) + re[i] ** 2 + im[i] ** 2);
    }
    const ns = [...perN.keys()].sort((a, z) => a - z);
    out.push({ n: ns, prob: ns.map((k) => perN.get(k)!) });
  }
  return out;
}

/** Spectrum vs v with mid-gap band highlighted, edge-state wave functions,
 *  winding profiles, and the transition curve. */
export function renderSpectrumTopology(inDir: string, outPath: string,
                                       midgapTol = 0.05): string {
  const specPath = join(inDir, "spectrum.csv");
  const spec = readCsv(specPath, ["v", "E_1"]);
  const v = column(spec, "v", specPath);
  const eCols = spec.header.filter((h) => h.startsWith("E_"));
  const energies = eCols.map((h) => column(spec, h, specPath));

  const statesPath = join(inDir, "states.csv");
  const states = readCsv(statesPath, ["v", "n", "sigma", "re", "im"]);
  const blocks = groupStates(states, statesPath);

  const profiles = readdirSync(inDir)
    .filter((f) => /^profile_v.*\.csv$/.test(f))
    .sort();
  if (profiles.length === 0) {
    throw new Error(`missing input file: expected ${join(inDir, "profile_v*.csv")}`);
  }
  const transPath = join(inDir, "transition.csv");
  const trans = readCsv(transPath, ["v", "nu_avg"]);

  const [eLo, eHi] = extent(energies.flat());
  const pa = new Panel({ x: 55, y: 30, width: 320, height: 250 },
                       extent(v), [eLo, eHi],
                       { xlabel: "v / w0", ylabel: "E / w0", title: "spectrum" });
  energies.forEach((col) => {
    // highlight levels that enter the mid-gap window anywhere in the scan
    const inGap = col.some((e) => Math.abs(e) < midgapTol);
    pa.polyline({ x: v, y: col, color: inGap ? "#d73027" : "#777", width: 0.8 });
  });

  const pb = new Panel({ x: 430, y: 30, width: 320, height: 250 },
                       extent(blocks.flatMap((b) => b.n)),
                       [0, Math.max(...blocks.flatMap((b) => b.prob))],
                       { xlabel: "n", ylabel: "|psi|^2", title: "mid-gap states" });
  blocks.slice(0, 6).forEach((b, i) =>
    pb.polyline({ x: b.n, y: b.prob, color: PALETTE[i % PALETTE.length], markers: true }));

  const profTables = profiles.map((f) => {
    const p = join(inDir, f);
    const t = readCsv(p, ["n", "nu"]);
    return { name: f.replace(/^profile_v|\.csv$/g, "").replace("p", "."), t, p };
  });
  const pc = new Panel({ x: 55, y: 330, width: 320, height: 250 },
                       extent(column(profTables[0].t, "n", profTables[0].p)),
                       [-0.1, 1.1],
                       { xlabel: "n", ylabel: "nu(n)", title: "local winding" });
  profTables.forEach((pt, i) =>
    pc.polyline({ x: column(pt.t, "n", pt.p), y: column(pt.t, "nu", pt.p),
                  color: PALETTE[i % PALETTE.length], label: pt.name }));
  pc.legend(profTables.map((pt, i) => ({ label: `v = ${pt.name}`,
                                         color: PALETTE[i % PALETTE.length] })));

  const pd = new Panel({ x: 430, y: 330, width: 320, height: 250 },
                       extent(column(trans, "v", transPath)), [-0.1, 1.1],
                       { xlabel: "v / w0", ylabel: "bulk average nu",
                         title: "topological transition" });
  pd.polyline({ x: column(trans, "v", transPath),
                y: column(trans, "nu_avg", transPath), color: "#1b7837", width: 1.6 });

  return writeSvg(outPath, svgDocument(810, 630, [pa, pb, pc, pd]));
}

interface TrajectoryFile {
  label: string;
  t: number[];
  dn: number[];
  periodT: number;
  samplesPerCycle: number;
  lambda: number;
}

function loadTrajectory(csvPath: string): TrajectoryFile {
  const t = readCsv(csvPath, ["t", "dn", "norm", "j_integral"]);
  const side = readSidecar(csvPath.replace(/\.csv$/, ".json")) as {
    config?: { cycle?: { period_T?: number }; pump?: { samples_per_cycle?: number } };
    lambda?: number;
  };
  const periodT = side.config?.cycle?.period_T;
  const samples = side.config?.pump?.samples_per_cycle;
  if (typeof periodT !== "number" || typeof samples !== "number") {
    throw new Error(`${csvPath}: sidecar lacks cycle.period_T / pump.samples_per_cycle`);
  }
  return { label: csvPath, t: column(t, "t", csvPath), dn: column(t, "dn", csvPath),
           periodT, samplesPerCycle: samples, lambda: Number(side.lambda ?? 0) };
}

/** Displacement staircase for the enclosing and non-enclosing circuits with
 *  the ideal one-quantum-per-cycle reference line. */
export function renderPumpStaircase(inDir: string, outPath: string): string {
  const enclosing = join(inDir, "pump_voff0_doff0_lam0.csv");
  const nonEnclosing = join(inDir, "pump_voff2_doff0_lam0.csv");
  const enc = loadTrajectory(enclosing);
  const non = loadTrajectory(nonEnclosing);

  const encCycles = enc.t.map((x) => x / enc.periodT);
  const nonCycles = non.t.map((x) => x / non.periodT);
  const maxC = Math.max(encCycles[encCycles.length - 1], nonCycles[nonCycles.length - 1]);
  const [dLo, dHi] = extent([...enc.dn, ...non.dn, maxC]);

  const p = new Panel({ x: 60, y: 25, width: 500, height: 330 },
                      [0, maxC], [Math.min(dLo, -0.5), dHi],
                      { xlabel: "t / T", ylabel: "spin displacement",
                        title: "spin pump staircase" });
  p.polyline({ x: [0, maxC], y: [0, maxC], color: "#d73027", width: 1.4,
               label: "ideal" });                       // one quantum per cycle
  p.polyline({ x: encCycles, y: enc.dn, color: "#1a1a1a", width: 1.5 });
  p.polyline({ x: nonCycles, y: non.dn, color: "#1b7837", width: 1.5 });
  p.legend([{ label: "enclosing circuit", color: "#1a1a1a" },
            { label: "non-enclosing circuit", color: "#1b7837" },
            { label: "ideal staircase", color: "#d73027" }]);
  return writeSvg(outPath, svgDocument(620, 410, [p]));
}

/** Cycle-boundary displacement for each interaction strength. */
export function renderInteractionPump(inDir: string, outPath: string): string {
  const files = readdirSync(inDir)
    .filter((f) => /^pump_voff0_doff0_lam.*\.csv$/.test(f))
    .sort();
  if (files.length === 0) {
    throw new Error(
      `missing input file: expected ${join(inDir, "pump_voff0_doff0_lam*.csv")}`);
  }
  const trajs = files.map((f) => loadTrajectory(join(inDir, f)))
    .sort((a, b) => a.lambda - b.lambda);

  const series = trajs.map((tr) => {
    const cycles: number[] = [0];
    const dn: number[] = [0];
    for (let i = tr.samplesPerCycle; i < tr.dn.length; i += tr.samplesPerCycle) {
      cycles.push(i / tr.samplesPerCycle);
      dn.push(tr.dn[i]);
    }
    return { cycles, dn, lambda: tr.lambda };
  });
  const maxC = Math.max(...series.map((s) => s.cycles[s.cycles.length - 1]));
  const hi = Math.max(...series.flatMap((s) => s.dn), maxC);

  const p = new Panel({ x: 60, y: 25, width: 500, height: 330 },
                      [0, maxC], [-0.3, hi],
                      { xlabel: "cycle", ylabel: "spin displacement at kT",
                        title: "pump vs interaction strength" });
  p.polyline({ x: [0, maxC], y: [0, maxC], color: "#d73027", width: 1.4 });
  series.forEach((s, i) =>
    p.polyline({ x: s.cycles, y: s.dn, color: PALETTE[i % PALETTE.length],
                 markers: true }));
  p.legend([{ label: "ideal", color: "#d73027" },
            ...series.map((s, i) => ({ label: `lam = ${s.lambda}`,
                                       color: PALETTE[i % PALETTE.length] }))]);
  return writeSvg(outPath, svgDocument(620, 410, [p]));
}

/** Exact vs mean-field ground energy per particle with the critical marker. */
export function renderQptScan(inDir: string, outPath: string): string {
  const qptPath = join(inDir, "qpt.csv");
  const t = readCsv(qptPath, ["lambda", "e0_quantum", "e0_mf"]);
  const side = readSidecar(join(inDir, "qpt.json")) as { lambda_crit?: number };
  if (typeof side.lambda_crit !== "number") {
    throw new Error(`${join(inDir, "qpt.json")}: sidecar lacks lambda_crit`);
  }
  const lam = column(t, "lambda", qptPath);
  const eq = column(t, "e0_quantum", qptPath);
  const em = column(t, "e0_mf", qptPath);

  const p = new Panel({ x: 65, y: 25, width: 500, height: 330 },
                      extent(lam), extent([...eq, ...em]),
                      { xlabel: "interaction lambda / w0",
                        ylabel: "2 E0 / N (w0)",
                        title: "ground-state transition" });
  p.polyline({ x: lam, y: eq, color: "#1a1a1a", width: 1.7 });
  p.polyline({ x: lam, y: em, color: "#d73027", width: 1.4, dash: "5 3" });
  p.vline(side.lambda_crit, "#4575b4", "4 3",
          `lambda_c = ${side.lambda_crit.toFixed(4)}`);
  p.legend([{ label: "exact", color: "#1a1a1a" },
            { label: "mean field", color: "#d73027", dash: "5 3" }]);
  return writeSvg(outPath, svgDocument(620, 410, [p]));
}

export const RENDERERS: Record<string, (inDir: string, out: string) => string> = {
  "2": renderSpectrumTopology,
  "3": renderPumpStaircase,
  "4": renderInteractionPump,
  "5": renderQptScan,
};

export function renderFig(figureId: string, inDir: string, outPath: string): string {
  const fn = RENDERERS[figureId];
  if (!fn) {
    throw new Error(`unknown figure id "${figureId}" (expected 2, 3, 4 or 5)`);
  }
  if (!existsSync(inDir)) {
    throw new Error(`missing input directory: expected ${inDir}`);
  }
  return fn(inDir, outPath);
}

export function cliMain(figureId: string, argv: string[]): number {
  let inDir: string | undefined;
  let out: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--in") inDir = argv[++i];
    else if (argv[i] === "--out") out = argv[++i];
    else {
      console.error(`unknown argument: ${argv[i]} (usage: --in <dir> --out <file>)`);
      return 2;
    }
  }
  if (!inDir || !out) {
    console.error("usage: --in <csv dir> --out <svg file>");
    return 2;
  }
  try {
    console.log(renderFig(figureId, inDir, out));
    return 0;
  } catch (err) {
    console.error((err as Error).message);
    return 1;
  }
}
