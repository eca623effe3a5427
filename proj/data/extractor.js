"use strict";
// In-page collector. Compiles to one expression whose value is the snapshot
// JSON string; all annotation rules live host-side.
(() => {
    try {
        const ATTRS = ['alt', 'title', 'aria-label', 'href', 'type', 'src', 'placeholder', 'value'];
        const NO_TEXT = new Set(['script', 'style', 'noscript', 'template']);
        const SKIP = new Set(['iframe', 'frame', 'object', 'embed']);
        const vw = window.innerWidth;
        const vh = window.innerHeight;
        const nodes = [];
        const intersect = (a, b) => {
            const r = {
                x1: Math.max(a.x1, b.x1), y1: Math.max(a.y1, b.y1),
                x2: Math.min(a.x2, b.x2), y2: Math.min(a.y2, b.y2),
            };
            return r.x1 < r.x2 && r.y1 < r.y2 ? r : null;
        };
        const visit = (el, parent, clip) => {
            const id = nodes.length;
            const tag = el.tagName.toLowerCase();
            const cs = window.getComputedStyle(el);
            const box = el.getBoundingClientRect();
            const rect = box.width > 0 && box.height > 0 && Number.isFinite(box.left + box.top + box.width + box.height)
                ? { x1: box.left, y1: box.top, x2: box.left + box.width, y2: box.top + box.height }
                : null;
            const attrs = {};
            for (const name of ATTRS) {
                const v = el.getAttribute(name);
                if (v !== null)
                    attrs[name] = v;
            }
            let text = '';
            if (!NO_TEXT.has(tag)) {
                for (const child of Array.from(el.childNodes)) {
                    if (child.nodeType === 3)
                        text += child.data;
                }
            }
            let occluded = false;
            if (rect) {
                const cx = (rect.x1 + rect.x2) / 2;
                const cy = (rect.y1 + rect.y2) / 2;
                if (cx >= 0 && cy >= 0 && cx < vw && cy < vh) {
                    const hit = document.elementFromPoint(cx, cy);
                    occluded = !!hit && !(hit === el || el.contains(hit) || hit.contains(el));
                }
            }
            const opacity = parseFloat(cs.opacity);
            const node = {
                id,
                parent,
                tag,
                role: el.getAttribute('role') || '',
                attrs,
                text,
                rect,
                style: {
                    display: cs.display,
                    visibility: cs.visibility,
                    opacity: Number.isFinite(opacity) ? Math.min(1, Math.max(0, opacity)) : 1,
                    cursor: cs.cursor,
                    position: cs.position,
                    overflow_clipped: !!rect && clip !== undefined && (clip === null || !intersect(rect, clip)),
                },
                occluded,
            };
            nodes.push(node);
            let childClip = clip;
            if (cs.overflowX !== 'visible' || cs.overflowY !== 'visible') {
                const own = rect || { x1: 0, y1: 0, x2: 0, y2: 0 };
                childClip = clip === undefined ? (rect ? own : null) : (clip && rect ? intersect(clip, own) : null);
            }
            if (SKIP.has(tag))
                return;
            for (const child of Array.from(el.children))
                visit(child, id, childClip);
        };
        visit(document.documentElement, null, undefined);
        const meta = document.querySelector('meta[name="description"]');
        const doc = {
            url: location.href,
            title: document.title || '',
            meta_description: meta ? meta.getAttribute('content') || '' : '',
            viewport: { width: vw, height: vh, dpr: window.devicePixelRatio },
            scroll: { x: window.scrollX, y: window.scrollY },
            nodes,
        };
        return JSON.stringify(doc);
    }
    catch (e) {
        return JSON.stringify({ error: String(e instanceof Error ? e.message : e) });
    }
})();
