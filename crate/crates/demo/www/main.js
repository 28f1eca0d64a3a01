import init, { curve, compare, reproduce } from "./pkg/mrlai_demo.js";

const PRESETS = {
  "Erlang k=2, rate 2": { spec: { family: "erlang", k: 2, rate: 2 }, t: [0.05, 10] },
  "Gamma shape 3": { spec: { family: "erlang", k: 3, rate: 1 }, t: [0.1, 20] },
  "Exponential": { spec: { family: "exponential", rate: 1 }, t: [0.05, 10] },
  "Pareto shape 3 (formal)": { spec: { family: "pareto", shape: 3, scale: 1 }, t: [0.1, 10], conv: "formal_extension" },
  "Linear MRL 1 + 8t": { spec: { family: "mrl_linear", a: 1, b: 8 }, t: [0.05, 20] },
  "Mixture of linear MRLs": {
    spec: { family: "mixture", weights: [0.2, 0.8], components: [{ family: "mrl_linear", a: 1, b: 8 }, { family: "mrl_linear", a: 1, b: 0.1 }] },
    t: [0.5, 40],
  },
  "Median of three, linear MRL": {
    spec: { family: "order_statistic", base: { family: "mrl_linear", a: 1, b: 1 }, k: 2, n: 3 },
    t: [0.02, 0.5],
  },
  "Weibull shape 2": { spec: { family: "weibull", shape: 2, scale: 1 }, t: [0.05, 3] },
};

const $ = (id) => document.getElementById(id);
const fmt = (x) => (x === null || x === undefined ? "" : typeof x === "number" ? Number(x.toPrecision(8)).toString() : x);

function plot(canvas, t, series) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  const ys = series.flatMap((s) => s.values).filter(Number.isFinite);
  if (!ys.length) return;
  let lo = Math.min(...ys), hi = Math.max(...ys);
  if (hi - lo < 1e-9) { lo -= 0.5; hi += 0.5; }
  const x0 = t[0], x1 = t[t.length - 1];
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - lo) / (hi - lo)) * (h - 2 * pad);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.fillText(fmt(hi), 2, pad + 4);
  ctx.fillText(fmt(lo), 2, h - pad);
  ctx.fillText(fmt(x0), pad, h - pad + 14);
  ctx.fillText(fmt(x1), w - pad - 20, h - pad + 14);
  series.forEach((s, k) => {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    let started = false;
    s.values.forEach((y, i) => {
      if (!Number.isFinite(y)) { started = false; return; }
      started ? ctx.lineTo(px(t[i]), py(y)) : ctx.moveTo(px(t[i]), py(y));
      started = true;
    });
    ctx.stroke();
    ctx.fillStyle = s.color;
    ctx.fillText(s.label, w - pad - 60, pad + 14 + 14 * k);
  });
}

function table(headers, rows, rowClass) {
  const head = `<tr>${headers.map((h) => `<th>${h}</th>`).join("")}</tr>`;
  const body = rows
    .map((r, i) => `<tr class="${rowClass ? rowClass(i) : ""}">${r.map((c) => `<td>${fmt(c)}</td>`).join("")}</tr>`)
    .join("");
  return `<table>${head}${body}</table>`;
}

function guarded(errBox, f) {
  return () => {
    $(errBox).textContent = "";
    try {
      f();
    } catch (e) {
      $(errBox).textContent = String(e);
    }
  };
}

function drawCurve() {
  const request = JSON.stringify({ t_min: +$("tmin").value, t_max: +$("tmax").value, n: 300, conv: $("conv").value });
  const out = JSON.parse(curve($("spec").value, request));
  const q = $("quantity").value;
  const values = out.profile[q];
  if (!values) throw new Error(`${q} is not available for this distribution`);
  plot($("curve"), out.profile.grid, [{ label: q, values, color: "#1565c0" }]);
  const rows = Object.entries(out.classes)
    .filter(([, v]) => v && v.kind)
    .map(([name, v]) => [name, v.kind.kind, v.kind.level ?? "", v.witness ? v.witness.t.map(fmt).join(" ") : ""]);
  $("verdicts").innerHTML = table(["quantity", "verdict", "level", "witness t"], rows);
}

function runCompare() {
  const request = JSON.stringify({ t_min: +$("cmin").value, t_max: +$("cmax").value, n: 200, conv: $("cconv").value });
  const out = JSON.parse(compare($("x").value, $("y").value, request));
  plot($("pair"), out.t, [
    { label: "L_X", values: out.L_x, color: "#1565c0" },
    { label: "L_Y", values: out.L_y, color: "#c62828" },
  ]);
  const rows = out.verdicts.map((v) => [v.order, v.relation, v.decided_by ?? "", v.witness?.t, v.witness?.lhs, v.witness?.rhs, v.note ?? ""]);
  $("orders").innerHTML = table(["order", "X ≤ Y", "decided by", "t", "lhs", "rhs", "note"], rows, (i) => out.verdicts[i].relation);
}

function runCorpus() {
  const r = JSON.parse(reproduce($("filter").value));
  const s = r.summary;
  $("summary").textContent = `${s.cases} cases, ${s.checks} checks: ${s.matched} match, ${s.disputed} disputed-as-expected, ${s.mismatched} MISMATCH`;
  const rows = [], cls = [];
  for (const c of r.cases) {
    for (const k of c.checks) {
      rows.push([c.id, k.label, k.t, k.computed, k.expected, k.printed ?? "", k.delta, k.status]);
      cls.push(k.status);
    }
  }
  $("report").innerHTML = (r.warnings || []).map((w) => `<p class="err">${w}</p>`).join("") +
    table(["case", "check", "t", "computed", "expected", "printed", "delta", "status"], rows, (i) => cls[i]);
}

function loadPreset() {
  const p = PRESETS[$("preset").value];
  $("spec").value = JSON.stringify(p.spec);
  $("tmin").value = p.t[0];
  $("tmax").value = p.t[1];
  $("conv").value = p.conv ?? "zero";
}

await init();
for (const name of Object.keys(PRESETS)) $("preset").add(new Option(name, name));
$("preset").addEventListener("change", () => { loadPreset(); guarded("curve-err", drawCurve)(); });
$("draw").addEventListener("click", guarded("curve-err", drawCurve));
$("quantity").addEventListener("change", guarded("curve-err", drawCurve));
$("compare").addEventListener("click", guarded("compare-err", runCompare));
$("reproduce").addEventListener("click", guarded("report", runCorpus));
loadPreset();
guarded("curve-err", drawCurve)();
guarded("compare-err", runCompare)();
