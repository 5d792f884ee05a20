// Three.js view: floor grid, orbit rings, platform spheres, and link
// segments that appear exactly while a pair is within its threshold.
// Model coordinates (x, y ground plane, z altitude) map to three.js
// (X, Z, Y) so altitude is up.

import * as THREE from "three";
import { OrbitControls } from "three/addons/controls/OrbitControls.js";

import { linkLive, positionAt } from "./kinematics.js";
import { DEFAULT_RANGES } from "./ranges.js";
import { PairWire, PlatformWire, SceneDocument } from "./types.js";

const PLATFORM_COLORS = [0x1565c0, 0xc62828, 0x2e7d32, 0xf9a825, 0x6a1b9a, 0x00838f];

interface PlatformVisual {
  spec: PlatformWire;
  mesh: THREE.Mesh;
  ring: THREE.LineLoop;
}

interface LinkVisual {
  pair: PairWire;
  line: THREE.Line;
  positions: THREE.BufferAttribute;
}

export class OrbitScene {
  private renderer: THREE.WebGLRenderer;
  private scene = new THREE.Scene();
  private camera: THREE.PerspectiveCamera;
  private controls: OrbitControls;
  private platforms: PlatformVisual[] = [];
  private links: LinkVisual[] = [];
  private root = new THREE.Group();

  constructor(canvas: HTMLCanvasElement) {
    this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
    this.renderer.setPixelRatio(Math.min(window.devicePixelRatio, 2));
    this.scene.background = new THREE.Color(0x10141a);

    this.camera = new THREE.PerspectiveCamera(55, 1, 0.1, 2000);
    this.camera.position.set(18, 16, 18);
    this.camera.lookAt(0, 0, 0);
    this.controls = new OrbitControls(this.camera, canvas);
    this.controls.enableDamping = true;

    const extent = DEFAULT_RANGES.gridExtent;
    const grid = new THREE.GridHelper(2 * extent, 2 * extent, 0x3a4a5a, 0x222c36);
    this.scene.add(grid);
    this.scene.add(new THREE.AmbientLight(0xffffff, 0.7));
    const sun = new THREE.DirectionalLight(0xffffff, 1.2);
    sun.position.set(20, 30, 10);
    this.scene.add(sun);
    this.scene.add(this.root);
  }

  /** Rebuild all meshes for a (re)loaded document. */
  setDocument(doc: SceneDocument): void {
    this.root.clear();
    this.platforms = [];
    this.links = [];

    doc.platforms.forEach((spec, i) => {
      const color = PLATFORM_COLORS[i % PLATFORM_COLORS.length];
      const mesh = new THREE.Mesh(
        new THREE.SphereGeometry(0.35, 24, 16),
        new THREE.MeshStandardMaterial({ color }),
      );
      const ring = new THREE.LineLoop(
        ringGeometry(spec),
        new THREE.LineBasicMaterial({ color, transparent: true, opacity: 0.45 }),
      );
      this.root.add(mesh, ring);
      this.platforms.push({ spec, mesh, ring });
    });

    for (const pair of doc.pairs) {
      const positions = new THREE.BufferAttribute(new Float32Array(6), 3);
      const geometry = new THREE.BufferGeometry();
      geometry.setAttribute("position", positions);
      const line = new THREE.Line(
        geometry,
        new THREE.LineBasicMaterial({ color: 0xe0f2f1, linewidth: 2 }),
      );
      this.root.add(line);
      this.links.push({ pair, line, positions });
    }
  }

  /** One frame at the given simulation time. */
  render(clock: number): void {
    const byId = new Map<string, PlatformVisual>();
    for (const pv of this.platforms) {
      const pos = positionAt(pv.spec, clock);
      pv.mesh.position.set(pos.x, pos.z, pos.y);
      byId.set(pv.spec.id, pv);
    }
    for (const lv of this.links) {
      const a = byId.get(lv.pair.a);
      const b = byId.get(lv.pair.b);
      if (!a || !b) continue;
      const on = linkLive(a.spec, b.spec, clock, lv.pair.threshold);
      lv.line.visible = on;
      if (on) {
        lv.positions.setXYZ(0, a.mesh.position.x, a.mesh.position.y, a.mesh.position.z);
        lv.positions.setXYZ(1, b.mesh.position.x, b.mesh.position.y, b.mesh.position.z);
        lv.positions.needsUpdate = true;
      }
    }
    this.controls.update();
    this.renderer.render(this.scene, this.camera);
  }

  resize(width: number, height: number): void {
    this.renderer.setSize(width, height, false);
    this.camera.aspect = width / Math.max(height, 1);
    this.camera.updateProjectionMatrix();
  }

  dispose(): void {
    this.renderer.dispose();
    this.controls.dispose();
  }
}

function ringGeometry(spec: PlatformWire): THREE.BufferGeometry {
  const segments = 96;
  const pts: THREE.Vector3[] = [];
  for (let i = 0; i < segments; i++) {
    const a = (2 * Math.PI * i) / segments;
    pts.push(
      new THREE.Vector3(
        spec.center_x + spec.orbit_radius * Math.cos(a),
        spec.altitude,
        spec.center_y + spec.orbit_radius * Math.sin(a),
      ),
    );
  }
  return new THREE.BufferGeometry().setFromPoints(pts);
}
