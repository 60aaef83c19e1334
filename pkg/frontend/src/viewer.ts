// Three.js preview: build a BufferGeometry from the server's flat mesh
// arrays and render it with a slow turntable plus drag-to-orbit.

import * as THREE from "three";

import type { MeshJson } from "./types";

export function buildGeometry(mesh: MeshJson): THREE.BufferGeometry {
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute(
    "position",
    new THREE.Float32BufferAttribute(mesh.positions, 3),
  );
  geometry.setAttribute(
    "normal",
    new THREE.Float32BufferAttribute(mesh.normals, 3),
  );
  geometry.setIndex(mesh.indices);
  return geometry;
}

export class Viewer {
  private readonly renderer: THREE.WebGLRenderer;
  private readonly scene: THREE.Scene;
  private readonly camera: THREE.PerspectiveCamera;
  private readonly pivot: THREE.Group;
  private current: THREE.Mesh | null = null;
  private dragging = false;
  private lastX = 0;
  private lastY = 0;

  constructor(private readonly canvas: HTMLCanvasElement) {
    this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
    this.renderer.setPixelRatio(window.devicePixelRatio);
    this.scene = new THREE.Scene();
    this.scene.background = new THREE.Color(0x14161a);
    this.camera = new THREE.PerspectiveCamera(40, 1, 0.1, 50);
    this.camera.position.set(0, 0, 4.2);

    const key = new THREE.DirectionalLight(0xffffff, 2.2);
    key.position.set(3, 4, 5);
    const fill = new THREE.DirectionalLight(0x8899ff, 0.8);
    fill.position.set(-4, -2, -3);
    this.scene.add(key, fill, new THREE.AmbientLight(0xffffff, 0.25));

    this.pivot = new THREE.Group();
    this.scene.add(this.pivot);

    canvas.addEventListener("pointerdown", (e) => {
      this.dragging = true;
      this.lastX = e.clientX;
      this.lastY = e.clientY;
      canvas.setPointerCapture(e.pointerId);
    });
    canvas.addEventListener("pointermove", (e) => {
      if (!this.dragging) return;
      this.pivot.rotation.y += (e.clientX - this.lastX) * 0.01;
      this.pivot.rotation.x += (e.clientY - this.lastY) * 0.01;
      this.lastX = e.clientX;
      this.lastY = e.clientY;
    });
    canvas.addEventListener("pointerup", () => {
      this.dragging = false;
    });

    this.resize();
    window.addEventListener("resize", () => this.resize());
    this.renderer.setAnimationLoop(() => {
      if (!this.dragging) {
        this.pivot.rotation.y += 0.003;
      }
      this.renderer.render(this.scene, this.camera);
    });
  }

  setMesh(mesh: MeshJson): void {
    const geometry = buildGeometry(mesh);
    if (this.current) {
      this.pivot.remove(this.current);
      this.current.geometry.dispose();
    }
    const material = new THREE.MeshStandardMaterial({
      color: 0xd8c7ff,
      roughness: 0.45,
      metalness: 0.05,
    });
    this.current = new THREE.Mesh(geometry, material);
    this.pivot.add(this.current);
  }

  private resize(): void {
    const { clientWidth, clientHeight } = this.canvas.parentElement ?? this.canvas;
    const width = Math.max(1, clientWidth);
    const height = Math.max(1, clientHeight);
    this.renderer.setSize(width, height, false);
    this.camera.aspect = width / height;
    this.camera.updateProjectionMatrix();
  }
}
