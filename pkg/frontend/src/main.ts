// Bootstrap: fetch the scene, wire store + renderer + panel, run the loop.

import { fetchScene, makePoster } from "./api.js";
import { ControlPanel } from "./controls.js";
import { OrbitScene } from "./scene3d.js";
import { SceneStore } from "./state.js";

const apiBase =
  new URLSearchParams(location.search).get("api") ?? location.origin;

async function start(): Promise<void> {
  const canvas = document.getElementById("view") as HTMLCanvasElement;
  const panelEl = document.getElementById("panel") as HTMLElement;
  const banner = document.getElementById("banner") as HTMLElement;

  const store = new SceneStore(makePoster(apiBase));
  const scene = new OrbitScene(canvas);
  const panel = new ControlPanel(panelEl, store);

  const doc = await fetchScene(apiBase);
  store.adopt(doc);
  store.clock = doc.reference_time;
  scene.setDocument(doc);
  panel.rebuild(doc);

  let lastRevision = doc.revision;
  let last = performance.now();

  const resize = () => {
    const rect = canvas.parentElement!.getBoundingClientRect();
    scene.resize(rect.width, rect.height);
  };
  window.addEventListener("resize", resize);
  resize();

  function frame(now: number): void {
    const dt = Math.min((now - last) / 1000, 0.25);
    last = now;
    store.tick(dt);

    if (store.doc && store.doc.revision !== lastRevision) {
      lastRevision = store.doc.revision;
      scene.setDocument(store.doc);
      panel.rebuild(store.doc);
    }
    if (store.doc) {
      scene.render(store.clock);
      panel.refreshBadges(store.doc);
    }
    banner.hidden = !store.connectionLost;
    requestAnimationFrame(frame);
  }
  requestAnimationFrame(frame);
}

start().catch((err) => {
  const banner = document.getElementById("banner");
  if (banner) {
    banner.hidden = false;
    banner.textContent = `scene service unreachable: ${err}`;
  }
});
