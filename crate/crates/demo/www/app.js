import init, * as sim from "./pkg/toric_demo.js";

const $ = (id) => document.getElementById(id);
const call = (f, ...args) => {
  try {
    return { ok: JSON.parse(f(...args)) };
  } catch (e) {
    return { err: String(e) };
  }
};

// lattice panel

const lat = { strings: [], region: new Set(), pending: null, view: null, cell: 0, pad: 40 };

function faceRect(face) {
  const [i, j] = face;
  return [lat.pad + i * lat.cell, lat.pad + j * lat.cell, lat.cell, lat.cell];
}

function drawLattice() {
  const c = $("lcanvas"), g = c.getContext("2d"), v = lat.view;
  g.clearRect(0, 0, c.width, c.height);
  const w = v.width, h = v.height;
  lat.cell = Math.min((c.width - 2 * lat.pad) / (w - 1), (c.height - 2 * lat.pad) / (h - 1));
  g.save();
  g.beginPath();
  g.rect(lat.pad - lat.cell / 2, lat.pad - lat.cell / 2, (w - 1) * lat.cell + lat.cell, (h - 1) * lat.cell + lat.cell);
  g.clip();
  for (const p of v.plaquettes) {
    const [x, y, s] = faceRect(p.face);
    g.fillStyle = p.kind === "S" ? (lat.region.has(p.id) ? "#9bc" : "#ccc") : "#fff";
    g.fillRect(x, y, s, s);
    g.strokeStyle = "#999";
    g.strokeRect(x, y, s, s);
    if (lat.pending === p.id) {
      g.strokeStyle = "#e80";
      g.lineWidth = 3;
      g.strokeRect(x + 3, y + 3, s - 6, s - 6);
      g.lineWidth = 1;
    }
    if (p.occupied) {
      g.fillStyle = p.kind === "S" ? "#c22" : "#22c";
      g.beginPath();
      g.arc(x + s / 2, y + s / 2, s / 6, 0, 2 * Math.PI);
      g.fill();
      g.fillStyle = "#fff";
      g.font = `${Math.round(s / 6)}px sans-serif`;
      g.textAlign = "center";
      g.textBaseline = "middle";
      g.fillText(p.kind === "S" ? "e" : "m", x + s / 2, y + s / 2);
    }
  }
  g.restore();
  v.coords.forEach(([qx, qy], q) => {
    const x = lat.pad + qx * lat.cell, y = lat.pad + qy * lat.cell, l = v.letters[q];
    g.fillStyle = l === "I" ? "#333" : l === "Z" ? "#c22" : l === "X" ? "#22c" : "#808";
    g.beginPath();
    g.arc(x, y, l === "I" ? 4 : 9, 0, 2 * Math.PI);
    g.fill();
    if (l !== "I") {
      g.fillStyle = "#fff";
      g.font = "11px sans-serif";
      g.textAlign = "center";
      g.textBaseline = "middle";
      g.fillText(l, x, y);
    }
  });
}

function refreshLattice() {
  const w = +$("lw").value, h = +$("lh").value;
  const r = call(sim.lattice_state, w, h, JSON.stringify(lat.strings), JSON.stringify([...lat.region]));
  $("lerr").textContent = r.err ?? "";
  if (r.err) {
    lat.strings.pop();
    return;
  }
  lat.view = r.ok;
  const anyons = r.ok.plaquettes.filter((p) => p.occupied).map((p) => `${p.kind === "S" ? "e" : "m"}@${p.id}`);
  $("linfo").innerHTML =
    `energy ${r.ok.energy}<br>anyons: ${anyons.join(", ") || "none"}<br>strings: ${lat.strings.length}` +
    (r.ok.loop_value === null ? "" : `<br>loop around {${[...lat.region].join(", ")}}: <b>${r.ok.loop_value > 0 ? "+1" : "-1"}</b>`);
  drawLattice();
}

$("lcanvas").addEventListener("click", (ev) => {
  if (!lat.view) return;
  const rect = ev.target.getBoundingClientRect();
  const px = ev.clientX - rect.left, py = ev.clientY - rect.top;
  const p = lat.view.plaquettes.find((q) => {
    const [x, y, s] = faceRect(q.face);
    return px >= x && px < x + s && py >= y && py < y + s;
  });
  if (!p) return;
  if (ev.shiftKey) {
    if (p.kind !== "S") return;
    lat.region.has(p.id) ? lat.region.delete(p.id) : lat.region.add(p.id);
  } else if (lat.pending === null) {
    lat.pending = p.id;
  } else {
    const first = lat.view.plaquettes[lat.pending];
    if (first.kind === p.kind && first.id !== p.id) {
      lat.strings.push({ anyon: p.kind === "S" ? "e" : "m", from: first.id, to: p.id });
    }
    lat.pending = null;
  }
  refreshLattice();
});
$("lundo").onclick = () => { lat.strings.pop(); refreshLattice(); };
const resetLattice = () => { lat.strings = []; lat.region.clear(); lat.pending = null; refreshLattice(); };
$("lreset").onclick = resetLattice;
$("lw").onchange = resetLattice;
$("lh").onchange = resetLattice;

// curve panel

function drawCurve(d) {
  const c = $("ccanvas"), g = c.getContext("2d");
  const L = 45, R = 10, T = 10, B = 30, W = c.width - L - R, H = c.height - T - B;
  const X = (gm) => L + (gm / (2 * Math.PI)) * W, Y = (v) => T + ((1 - v) / 2) * H;
  g.clearRect(0, 0, c.width, c.height);
  g.strokeStyle = "#bbb";
  g.fillStyle = "#444";
  g.font = "11px sans-serif";
  for (const v of [-1, -0.5, 0, 0.5, 1]) {
    g.beginPath(); g.moveTo(L, Y(v)); g.lineTo(L + W, Y(v)); g.stroke();
    g.fillText(v.toFixed(1), 10, Y(v) + 4);
  }
  ["0", "π/2", "π", "3π/2", "2π"].forEach((t, k) => g.fillText(t, X((k * Math.PI) / 2) - 8, T + H + 18));
  const line = (pts, color, dash) => {
    g.strokeStyle = color; g.setLineDash(dash); g.beginPath();
    pts.forEach(([x, y], k) => (k ? g.lineTo(X(x), Y(y)) : g.moveTo(X(x), Y(y))));
    g.stroke(); g.setLineDash([]);
  };
  line(d.exact, "#888", [4, 3]);
  if (d.sampled) {
    line(d.sampled.fit_curve, "#c22", []);
    g.fillStyle = "#000";
    g.strokeStyle = "#000";
    for (const p of d.sampled.points) {
      g.beginPath(); g.arc(X(p.gamma), Y(p.value), 3, 0, 2 * Math.PI); g.fill();
      g.beginPath(); g.moveTo(X(p.gamma), Y(p.value - p.sigma)); g.lineTo(X(p.gamma), Y(p.value + p.sigma)); g.stroke();
    }
  }
}

function refreshCurve() {
  const r = call(sim.correlation_demo, +$("cphi").value, +$("cw").value, +$("cd").value, +$("ct").value,
    Math.max(0, +$("cn").value | 0), Math.max(0, +$("cs").value | 0));
  $("cerr").textContent = r.err ?? "";
  if (r.err) return;
  const d = r.ok;
  let info = `exact P_HHHH ${d.p_hhhh.toFixed(3)}, P_VVVV ${d.p_vvvv.toFixed(3)}`;
  if (d.sampled) {
    const s = d.sampled, f = s.fit;
    info += `<br>fit: V = ${f.visibility.toFixed(3)} ± ${f.stderr.visibility.toFixed(3)}` +
      `<br>φ = ${f.phase_pi.toFixed(3)} ± ${(f.stderr.phase / Math.PI).toFixed(3)} π` +
      `<br>χ² / dof = ${f.chi2.toFixed(1)} / ${f.dof}` +
      `<br>fidelity ${s.fidelity.toFixed(3)}, witness ${s.witness ? "<span class=pass>entangled</span>" : "<span class=fail>inconclusive</span>"}`;
  }
  $("cinfo").innerHTML = info;
  drawCurve(d);
}

$("crun").onclick = refreshCurve;
for (const id of ["cphi", "cw", "cd", "ct", "cn", "cs"]) $(id).onchange = refreshCurve;
$("ccal").onclick = () => {
  const n = JSON.parse(sim.calibrated_noise());
  $("cw").value = n.white_noise.toFixed(4);
  $("cd").value = n.dephasing.toFixed(4);
  $("ct").value = n.tilt.toFixed(4);
  refreshCurve();
};

// built-ins panel

function runBuiltin() {
  const r = call(sim.run_builtin, $("bsel").value);
  if (r.err) {
    $("bsummary").innerHTML = `<span class=err>${r.err}</span>`;
    $("bout").textContent = "";
    return;
  }
  const rep = r.ok, bits = [];
  if (rep.analysis) bits.push(`GHZ phase ${rep.analysis.phase_pi.toFixed(3)} π, visibility ${rep.analysis.visibility.toFixed(3)}`);
  if (rep.occupancy) bits.push(`anyons on [${rep.occupancy.occupied.join(", ")}]`);
  if (rep.overlap) bits.push(`⟨ψ_ini|ψ_fin⟩ = ${rep.overlap.re.toFixed(3)} ${rep.overlap.im >= 0 ? "+" : "-"} ${Math.abs(rep.overlap.im).toFixed(3)}i`);
  const passed = rep.checks.filter((c) => c.passed).length;
  bits.push(`<span class=${rep.passed ? "pass" : "fail"}>${passed}/${rep.checks.length} checks passed</span>`);
  $("bsummary").innerHTML = bits.join("<br>");
  $("bout").textContent = JSON.stringify(rep, null, 2);
}

await init();
for (const b of JSON.parse(sim.builtin_list())) {
  const o = document.createElement("option");
  o.value = b.name;
  o.textContent = `${b.name}: ${b.description}`;
  $("bsel").appendChild(o);
}
$("brun").onclick = runBuiltin;
refreshLattice();
refreshCurve();
