import init, { solve_grid, compare_grid, shape_sweep } from "./pkg/monarchy_demo.js";

const $ = (id) => document.getElementById(id);
const status = (msg, bad = false) => {
  $("status").textContent = msg;
  $("status").className = bad ? "bad" : "";
};

function params() {
  return {
    rows: Number($("rows").value),
    cols: Number($("cols").value),
    wmin: Number($("wmin").value),
    wmax: Number($("wmax").value),
    seed: BigInt($("seed").value || 0),
    hzp: $("hzp").checked,
  };
}

// Node id = col * rows + row + 1, row 0 at the bottom.
function cell(id, rows) {
  const i = id - 1;
  return { row: i % rows, col: Math.floor(i / rows) };
}

function draw(sol) {
  const { rows, cols } = sol;
  const costs = sol.costs();
  const canvas = $("grid");
  const scale = Math.max(1, Math.floor(480 / Math.max(rows, cols)));
  canvas.width = cols * scale;
  canvas.height = rows * scale;
  const ctx = canvas.getContext("2d");
  let max = 0;
  for (const c of costs) if (c > max) max = c;
  costs.forEach((c, i) => {
    const { row, col } = cell(i + 1, rows);
    if (c < 0) {
      ctx.fillStyle = "#000";
    } else {
      const t = max === 0 ? 0 : c / max;
      ctx.fillStyle = `hsl(${240 - 240 * t}, 70%, ${35 + 30 * t}%)`;
    }
    ctx.fillRect(col * scale, (rows - 1 - row) * scale, scale, scale);
  });
  const path = sol.path();
  if (path.length > 1) {
    ctx.strokeStyle = "rgba(255,255,255,.85)";
    ctx.lineWidth = Math.max(1, scale / 4);
    ctx.beginPath();
    path.forEach((id, k) => {
      const { row, col } = cell(id, rows);
      const x = (col + 0.5) * scale, y = (rows - 1 - row + 0.5) * scale;
      k === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
    });
    ctx.stroke();
  }
}

function table(records, keys) {
  const head = keys.map((k) => `<th>${k}</th>`).join("");
  const body = records
    .map((r) => "<tr>" + keys.map((k) => `<td>${fmt(r[k])}</td>`).join("") + "</tr>")
    .join("");
  return `<table><tr>${head}</tr>${body}</table>`;
}

const fmt = (v) => (typeof v === "number" && !Number.isInteger(v) ? v.toFixed(3) : v);

function guarded(fn) {
  return () => {
    try {
      fn();
    } catch (e) {
      status(String(e.message ?? e), true);
    }
  };
}

$("solve").onclick = guarded(() => {
  const p = params();
  const sol = solve_grid(p.rows, p.cols, p.wmin, p.wmax, p.seed, p.hzp, $("algo").value);
  draw(sol);
  const r = JSON.parse(sol.summary());
  $("side").innerHTML = table([r], ["algorithm", "n", "arcs", "big_loops", "node_scans", "improvements", "snoa", "hda_ms", "schedule_ms"]);
  status(`${r.algorithm}: ${r.n} nodes solved; line shows the tree path to the far corner`);
  sol.free();
});

$("compare").onclick = guarded(() => {
  const p = params();
  const out = JSON.parse(compare_grid(p.rows, p.cols, p.wmin, p.wmax, p.seed, p.hzp));
  $("side").innerHTML = table(out.records, ["algorithm", "big_loops", "node_scans", "origins", "improvements", "snoa", "ooa", "onoa", "schedule_ms"]);
  status(out.agree ? "all optimisers agree on every cost" : out.disagreement, !out.agree);
});

$("sweep").onclick = guarded(() => {
  const n = Number($("sweep-n").value);
  const csv = shape_sweep(n, $("sweep-cols").value, $("sweep-algos").value, 1n);
  const [header, ...lines] = csv.trim().split("\n");
  const keys = header.split(",");
  const records = lines.map((l) => {
    const f = l.split(",");
    return Object.fromEntries(keys.map((k, i) => [k, isNaN(f[i]) ? f[i] : Number(f[i])]));
  });
  $("side").innerHTML = table(records, ["instance", "algorithm", "big_loops", "node_scans", "snoa", "schedule_ms"]);
  const url = URL.createObjectURL(new Blob([csv], { type: "text/csv" }));
  status("");
  $("status").innerHTML = `sweep done, <a download="sweep.csv" href="${url}">download CSV</a>`;
});

await init();
status("ready");
