import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

/** Write a miniature but schema-exact copy of every simulator output. */
export function writeFixtures(dir: string): void {
  mkdirSync(dir, { recursive: true });
  const csv = (name: string, lines: string[]) =>
    writeFileSync(join(dir, name), lines.join("\n") + "\n");
  const json = (name: string, obj: unknown) =>
    writeFileSync(join(dir, name), JSON.stringify(obj, null, 2) + "\n");

  const eHeader = Array.from({ length: 10 }, (_, i) => `E_${i + 1}`).join(",");
  csv("spectrum.csv", [
    `v,${eHeader}`,
    "0,-4,-3,-2,-1,0,0,1,2,3,4",
    "0.5,-4.2,-3.1,-2,-1,-0.01,0.01,1,2,3.1,4.2",
    "1,-4.5,-3.2,-2,-1,-0.4,0.4,1,2,3.2,4.5",
  ]);

  // one mid-gap state block over n = -2..2, sigma in {up, down}
  const stateRows = ["v,n,sigma,re,im"];
  for (let n = -2; n <= 2; n++) {
    const amp = n === -2 ? 0.7 : n === 2 ? 0.7 : 0.08;
    stateRows.push(`0.5,${n},up,${amp},0`);
    stateRows.push(`0.5,${n},down,0,${amp}`);
  }
  csv("states.csv", stateRows);

  const ns = Array.from({ length: 11 }, (_, i) => i - 5);
  csv("profile_v0p5.csv", ["n,nu",
    ...ns.map((n) => `${n},${Math.abs(n) <= 3 ? 1 : 0.1}`)]);
  csv("profile_v1p5.csv", ["n,nu", ...ns.map((n) => `${n},0.01`)]);
  csv("transition.csv", ["v,nu_avg", "0.5,1", "0.9,0.9", "1.1,0.1", "1.5,0"]);

  const pumpSidecar = (lambda: number) => ({
    artifact_version: "0.1.0",
    config: { cycle: { period_T: 3.0 }, pump: { samples_per_cycle: 4 } },
    circuit: { v_offset: 0.0 },
    lambda,
  });
  const stair = (slope: number) => {
    const rows = ["t,dn,norm,j_integral"];
    for (let i = 0; i <= 12; i++) {
      const t = (i * 3.0) / 4;
      const dn = slope * (t / 3.0);
      rows.push(`${t},${dn},1,${dn}`);
    }
    return rows;
  };
  csv("pump_voff0_doff0_lam0.csv", stair(1.0));
  json("pump_voff0_doff0_lam0.json", pumpSidecar(0.0));
  csv("pump_voff0_doff0_lam0p25.csv", stair(0.8));
  json("pump_voff0_doff0_lam0p25.json", pumpSidecar(0.25));
  csv("pump_voff2_doff0_lam0.csv", stair(0.05));
  json("pump_voff2_doff0_lam0.json", {
    ...pumpSidecar(0.0),
    circuit: { v_offset: 2.0 },
  });

  csv("qpt.csv", ["lambda,e0_quantum,e0_mf",
    "-0.894,-4.6,-4.61", "-0.447,-4.48,-4.48", "0,-4.47,-4.47"]);
  json("qpt.json", { artifact_version: "0.1.0", config: {}, lambda_crit: -0.4472 });
}
