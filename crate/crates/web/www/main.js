import init, { section_phase, steinberg_report, ns_rank } from "./pkg/steinberg_lab_web.js";

const num = (id) => parseFloat(document.getElementById(id).value);
const GRID = 120;

function hue(phase) {
  // phase in (-pi, pi] to an RGB triple on the colour wheel
  const h = (phase / (2 * Math.PI) + 1) % 1 * 6;
  const x = 1 - Math.abs((h % 2) - 1);
  const [r, g, b] = h < 1 ? [1, x, 0] : h < 2 ? [x, 1, 0] : h < 3 ? [0, 1, x]
    : h < 4 ? [0, x, 1] : h < 5 ? [x, 0, 1] : [1, 0, x];
  return [r * 255, g * 255, b * 255];
}

function plotPhase() {
  const canvas = document.getElementById("phase");
  const msg = document.getElementById("phase-msg");
  msg.textContent = "";
  msg.className = "";
  let data;
  try {
    data = section_phase(num("q-re"), num("q-im"), num("u-re"), num("u-im"), GRID);
  } catch (e) {
    msg.textContent = String(e);
    msg.className = "err";
    return;
  }
  const ctx = canvas.getContext("2d");
  const img = ctx.createImageData(GRID, GRID);
  for (let i = 0; i < GRID; i++) {
    for (let j = 0; j < GRID; j++) {
      const p = data[i * GRID + j];
      const [r, g, b] = Number.isNaN(p) ? [0, 0, 0] : hue(p);
      // row 0 is the inner radius; draw it at the bottom
      const k = ((GRID - 1 - i) * GRID + j) * 4;
      img.data.set([r, g, b, 255], k);
    }
  }
  const off = new OffscreenCanvas(GRID, GRID);
  off.getContext("2d").putImageData(img, 0, 0);
  ctx.imageSmoothingEnabled = false;
  ctx.drawImage(off, 0, 0, canvas.width, canvas.height);

  const lo = Math.log(Math.hypot(num("q-re"), num("q-im")));
  const lines = [];
  for (let k = GRID * GRID; k + 2 < data.length; k += 3) {
    const [lr, arg, m] = [data[k], data[k + 1], data[k + 2]];
    const x = (arg + Math.PI) / (2 * Math.PI) * canvas.width;
    const y = (1 - (lr - lo) / -lo) * canvas.height;
    ctx.beginPath();
    ctx.arc(x, Math.min(Math.max(y, 4), canvas.height - 4), 5, 0, 2 * Math.PI);
    ctx.lineWidth = 2;
    ctx.strokeStyle = m > 0 ? "white" : "black";
    ctx.stroke();
    lines.push(`${m > 0 ? "+" : ""}${m} at |w| = ${Math.exp(lr).toFixed(6)}, arg w = ${arg.toFixed(6)}`);
  }
  msg.textContent = "divisor: " + lines.join("; ");
}

function runJson(outId, f) {
  const out = document.getElementById(outId);
  try {
    out.textContent = JSON.stringify(JSON.parse(f()), null, 2);
    out.className = "";
  } catch (e) {
    out.textContent = String(e);
    out.className = "err";
  }
}

await init();
document.getElementById("phase-go").onclick = plotPhase;
document.getElementById("steinberg-go").onclick = () =>
  runJson("steinberg-out", () => steinberg_report(num("s-re"), num("s-im")));
document.getElementById("ns-go").onclick = () =>
  runJson("ns-out", () => ns_rank(num("t1-re"), num("t1-im"), num("t2-re"), num("t2-im"), num("height")));
plotPhase();
