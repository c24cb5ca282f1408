import init, { classifyGraph, petersenFamily, deltaY, yDelta, projectEmbedding } from "./pkg/linkless_wasm.js";

const $ = (id) => document.getElementById(id);

function call(f, onError) {
  try {
    return JSON.parse(f());
  } catch (e) {
    onError(e.message ?? String(e));
    return null;
  }
}

// classify

function runClassify() {
  const out = $("classify-output");
  const verdict = $("classify-verdict");
  verdict.className = "verdict";
  const budget = Math.max(1, Number($("classify-budget").value) | 0);
  const r = call(() => classifyGraph($("classify-input").value, budget), (msg) => {
    verdict.textContent = msg;
    verdict.className = "verdict error";
    out.textContent = "";
  });
  if (!r) return;
  const witness = r.witness ? ` (contains a ${r.witness.member} minor)` : "";
  verdict.textContent = `${r.vertices} vertices, ${r.edges} edges: ${r.verdict}${witness}`;
  out.textContent = JSON.stringify(r, null, 2);
}

// Delta-Y explorer

let family = [];
let current = null;

function drawGraph(canvas, g) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const n = g.vertices.length;
  const r = Math.min(width, height) / 2 - 30;
  const at = new Map(g.vertices.map((v, i) => {
    const t = (2 * Math.PI * i) / n - Math.PI / 2;
    return [v, [width / 2 + r * Math.cos(t), height / 2 + r * Math.sin(t)]];
  }));
  ctx.strokeStyle = "#555";
  ctx.lineWidth = 1.2;
  for (const [u, v] of g.edges) {
    ctx.beginPath();
    ctx.moveTo(...at.get(u));
    ctx.lineTo(...at.get(v));
    ctx.stroke();
  }
  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  for (const [v, [x, y]] of at) {
    ctx.fillStyle = "#fff";
    ctx.beginPath();
    ctx.arc(x, y, 11, 0, 2 * Math.PI);
    ctx.fill();
    ctx.stroke();
    ctx.fillStyle = "#000";
    ctx.fillText(String(v), x, y);
  }
}

function showExplorer(g) {
  current = g;
  const where = g.member ? `Petersen family member ${g.member}` : "not a Petersen family member";
  $("explorer-status").textContent = `${g.vertices.length} vertices, ${g.edges.length} edges: ${where}`;
  const tri = $("explorer-triangles");
  tri.replaceChildren(document.createTextNode(g.triangles.length ? "Delta-Y on " : "no triangles"));
  for (const [a, b, c] of g.triangles) {
    const button = document.createElement("button");
    button.textContent = `${a} ${b} ${c}`;
    button.onclick = () => {
      const next = call(() => deltaY(current.edge_list, a, b, c), alert);
      if (next) showExplorer(next);
    };
    tri.append(button);
  }
  const ys = $("explorer-vertices");
  ys.replaceChildren(document.createTextNode(g.degree3.length ? "Y-Delta at " : ""));
  for (const v of g.degree3) {
    const button = document.createElement("button");
    button.textContent = String(v);
    button.onclick = () => {
      const next = call(() => yDelta(current.edge_list, v), alert);
      if (next) showExplorer(next);
    };
    ys.append(button);
  }
  drawGraph($("explorer-canvas"), g);
}

function setupExplorer() {
  family = JSON.parse(petersenFamily());
  const select = $("explorer-member");
  for (const [i, m] of family.entries()) {
    const option = document.createElement("option");
    option.value = String(i);
    option.textContent = `${m.name} (${m.vertices.length} vertices)`;
    select.append(option);
  }
  select.onchange = () => showExplorer(family[Number(select.value)]);
  showExplorer(family[0]);
}

// projection

function runProjection() {
  const summary = $("projection-summary");
  summary.className = "verdict";
  const num = (id) => Number($(id).value) | 0;
  const r = call(
    () => projectEmbedding($("projection-graph").value, Math.max(0, num("projection-seed")),
      num("projection-x"), num("projection-y"), num("projection-z")),
    (msg) => {
      summary.textContent = msg;
      summary.className = "verdict error";
    },
  );
  if (!r) return;
  const odd = r.pairs.filter((p) => p.omega === 1).length;
  summary.textContent = `omega = ${r.omega}: ${r.summary}. Direction (${r.direction.join(", ")}), `
    + `${r.crossings.length} crossings, ${odd} of ${r.pairs.length} disjoint circuit pairs with odd lk.`;
  $("projection-pairs").textContent = r.pairs
    .map((p) => `[${p.j.join(" ")}] x [${p.k.join(" ")}]  lk = ${p.lk}`)
    .join("\n");
  drawProjection($("projection-canvas"), r);
}

function drawProjection(canvas, r) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const points = r.edges.flatMap((e) => e.path);
  const xs = points.map((p) => p[0]);
  const ys = points.map((p) => p[1]);
  const [x0, x1, y0, y1] = [Math.min(...xs), Math.max(...xs), Math.min(...ys), Math.max(...ys)];
  const scale = Math.min((width - 40) / (x1 - x0 || 1), (height - 40) / (y1 - y0 || 1));
  // screen y grows downwards, so flip to keep the frame right-handed
  const map = ([x, y]) => [20 + (x - x0) * scale, height - 20 - (y - y0) * scale];

  ctx.lineWidth = 1.5;
  ctx.strokeStyle = "#345";
  for (const e of r.edges) {
    ctx.beginPath();
    e.path.map(map).forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
    ctx.stroke();
  }
  // break the under strand and redraw the over strand across the gap
  for (const c of r.crossings) {
    const [x, y] = map(c.at);
    const [a, b] = c.over_segment.map(map);
    const len = Math.hypot(b[0] - a[0], b[1] - a[1]) || 1;
    const [dx, dy] = [((b[0] - a[0]) / len) * 9, ((b[1] - a[1]) / len) * 9];
    ctx.fillStyle = "#fff";
    ctx.beginPath();
    ctx.arc(x, y, 6, 0, 2 * Math.PI);
    ctx.fill();
    ctx.strokeStyle = c.sign > 0 ? "#1a7f37" : "#c62828";
    ctx.lineWidth = 2.5;
    ctx.beginPath();
    ctx.moveTo(x - dx, y - dy);
    ctx.lineTo(x + dx, y + dy);
    ctx.stroke();
  }
  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.strokeStyle = "#000";
  ctx.lineWidth = 1;
  for (const v of r.vertices) {
    const [x, y] = map(v.at);
    ctx.fillStyle = "#ffd54f";
    ctx.beginPath();
    ctx.arc(x, y, 10, 0, 2 * Math.PI);
    ctx.fill();
    ctx.stroke();
    ctx.fillStyle = "#000";
    ctx.fillText(String(v.id), x, y);
  }
}

await init();
$("classify-run").onclick = runClassify;
$("projection-run").onclick = runProjection;
setupExplorer();
runClassify();
runProjection();
