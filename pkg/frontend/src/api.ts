// Thin HTTP client for the scene service.

import { PostResult } from "./state.js";
import { SceneDocument, ScenarioWire } from "./types.js";

export async function fetchScene(base: string): Promise<SceneDocument> {
  const resp = await fetch(`${base}/scene`);
  if (!resp.ok) throw new Error(`GET /scene failed: ${resp.status}`);
  return (await resp.json()) as SceneDocument;
}

export function makePoster(base: string) {
  return async (body: ScenarioWire): Promise<PostResult> => {
    const resp = await fetch(`${base}/scene`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (resp.ok) {
      return { ok: true, doc: (await resp.json()) as SceneDocument };
    }
    if (resp.status === 400) {
      return { ok: false, error: await resp.json() };
    }
    throw new Error(`POST /scene failed: ${resp.status}`);
  };
}
