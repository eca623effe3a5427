"""Draws the starter icon bank: 64x64 RGBA glyphs plus manifest.json."""

import json
import math
import sys
from pathlib import Path

from PIL import Image, ImageDraw

S = 64
INK = (40, 40, 40, 255)
W = 5


def canvas():
    img = Image.new("RGBA", (S, S), (0, 0, 0, 0))
    return img, ImageDraw.Draw(img)


def poly(d, pts, fill=None, width=W):
    if fill:
        d.polygon(pts, fill=INK)
    else:
        d.line(pts + [pts[0]], fill=INK, width=width, joint="curve")


def arrow(d, direction):
    body = {"up": [(32, 54), (32, 14)], "down": [(32, 10), (32, 50)],
            "left": [(54, 32), (14, 32)], "right": [(10, 32), (50, 32)]}[direction]
    d.line(body, fill=INK, width=W)
    head = {"up": [(32, 8), (16, 26), (48, 26)], "down": [(32, 56), (16, 38), (48, 38)],
            "left": [(8, 32), (26, 16), (26, 48)], "right": [(56, 32), (38, 16), (38, 48)]}[direction]
    d.polygon(head, fill=INK)


def chevron(d, direction):
    pts = {"up": [(14, 40), (32, 22), (50, 40)], "down": [(14, 24), (32, 42), (50, 24)],
           "left": [(40, 14), (22, 32), (40, 50)], "right": [(24, 14), (42, 32), (24, 50)]}[direction]
    d.line(pts, fill=INK, width=W + 1, joint="curve")


def star(d, fill):
    pts = []
    for k in range(10):
        r = 26 if k % 2 == 0 else 11
        a = -math.pi / 2 + k * math.pi / 5
        pts.append((32 + r * math.cos(a), 33 + r * math.sin(a)))
    poly(d, pts, fill=fill)


def draw(name):
    img, d = canvas()
    if name == "magnifier":
        d.ellipse((8, 8, 40, 40), outline=INK, width=W)
        d.line((36, 36, 56, 56), fill=INK, width=W + 2)
    elif name == "home":
        d.polygon([(32, 8), (6, 32), (58, 32)], fill=INK)
        d.rectangle((14, 30, 50, 56), fill=INK)
        d.rectangle((27, 40, 37, 56), fill=(0, 0, 0, 0))
    elif name == "gear":
        for k in range(8):
            a = k * math.pi / 4
            d.line((32 + 14 * math.cos(a), 32 + 14 * math.sin(a), 32 + 27 * math.cos(a),
                    32 + 27 * math.sin(a)), fill=INK, width=9)
        d.ellipse((12, 12, 52, 52), fill=INK)
        d.ellipse((24, 24, 40, 40), fill=(0, 0, 0, 0))
    elif name == "heart":
        d.ellipse((8, 12, 34, 38), fill=INK)
        d.ellipse((30, 12, 56, 38), fill=INK)
        d.polygon([(10, 30), (54, 30), (32, 56)], fill=INK)
    elif name == "star":
        star(d, True)
    elif name == "star-outline":
        star(d, False)
    elif name == "close":
        d.line((12, 12, 52, 52), fill=INK, width=W + 1)
        d.line((52, 12, 12, 52), fill=INK, width=W + 1)
    elif name == "plus":
        d.line((32, 10, 32, 54), fill=INK, width=W + 1)
        d.line((10, 32, 54, 32), fill=INK, width=W + 1)
    elif name == "minus":
        d.line((10, 32, 54, 32), fill=INK, width=W + 1)
    elif name == "check":
        d.line([(10, 34), (26, 50), (56, 16)], fill=INK, width=W + 2, joint="curve")
    elif name.startswith("arrow-"):
        arrow(d, name.split("-")[1])
    elif name.startswith("chevron-"):
        chevron(d, name.split("-")[1])
    elif name == "menu":
        for y in (16, 32, 48):
            d.line((10, y, 54, y), fill=INK, width=W + 1)
    elif name == "more":
        for x in (14, 32, 50):
            d.ellipse((x - 5, 27, x + 5, 37), fill=INK)
    elif name == "user":
        d.ellipse((20, 6, 44, 30), fill=INK)
        d.pieslice((8, 34, 56, 82), 180, 360, fill=INK)
    elif name == "bell":
        d.pieslice((12, 8, 52, 56), 180, 360, fill=INK)
        d.rectangle((12, 31, 52, 46), fill=INK)
        d.rectangle((6, 44, 58, 50), fill=INK)
        d.ellipse((26, 50, 38, 60), fill=INK)
    elif name == "mail":
        d.rectangle((6, 14, 58, 50), outline=INK, width=W)
        d.line([(8, 16), (32, 36), (56, 16)], fill=INK, width=W)
    elif name == "trash":
        d.rectangle((10, 12, 54, 18), fill=INK)
        d.rectangle((26, 6, 38, 12), fill=INK)
        d.polygon([(14, 20), (50, 20), (46, 58), (18, 58)], fill=INK)
    elif name == "lock":
        d.arc((18, 6, 46, 38), 180, 360, fill=INK, width=W)
        d.line((18, 22, 18, 30), fill=INK, width=W)
        d.line((45, 22, 45, 30), fill=INK, width=W)
        d.rectangle((12, 28, 52, 58), fill=INK)
    elif name == "unlock":
        d.arc((18, 2, 46, 34), 180, 360, fill=INK, width=W)
        d.line((18, 18, 18, 28), fill=INK, width=W)
        d.rectangle((12, 28, 52, 58), fill=INK)
    elif name == "play":
        d.polygon([(18, 10), (54, 32), (18, 54)], fill=INK)
    elif name == "pause":
        d.rectangle((16, 10, 27, 54), fill=INK)
        d.rectangle((37, 10, 48, 54), fill=INK)
    elif name == "stop":
        d.rectangle((14, 14, 50, 50), fill=INK)
    elif name == "download":
        arrow(d, "down")
        d.line((10, 58, 54, 58), fill=INK, width=W)
    elif name == "upload":
        arrow(d, "up")
        d.line((10, 60, 54, 60), fill=INK, width=W)
    elif name == "refresh":
        d.arc((10, 10, 54, 54), 30, 330, fill=INK, width=W + 1)
        d.polygon([(56, 12), (56, 30), (40, 24)], fill=INK)
    elif name == "share":
        for c in ((48, 14), (16, 32), (48, 50)):
            d.ellipse((c[0] - 8, c[1] - 8, c[0] + 8, c[1] + 8), fill=INK)
        d.line([(48, 14), (16, 32), (48, 50)], fill=INK, width=4)
    elif name == "bookmark":
        d.polygon([(16, 6), (48, 6), (48, 58), (32, 44), (16, 58)], fill=INK)
    elif name == "calendar":
        d.rectangle((8, 12, 56, 56), outline=INK, width=W)
        d.rectangle((8, 12, 56, 24), fill=INK)
        d.line((20, 6, 20, 16), fill=INK, width=W)
        d.line((44, 6, 44, 16), fill=INK, width=W)
    elif name == "clock":
        d.ellipse((6, 6, 58, 58), outline=INK, width=W)
        d.line([(32, 16), (32, 32), (44, 40)], fill=INK, width=W)
    elif name == "camera":
        d.rectangle((6, 18, 58, 54), fill=INK)
        d.rectangle((22, 10, 42, 20), fill=INK)
        d.ellipse((20, 24, 44, 48), fill=(0, 0, 0, 0))
        d.ellipse((26, 30, 38, 42), fill=INK)
    elif name == "image":
        d.rectangle((6, 10, 58, 54), outline=INK, width=W)
        d.polygon([(10, 50), (26, 28), (38, 42), (46, 34), (56, 50)], fill=INK)
        d.ellipse((40, 16, 50, 26), fill=INK)
    elif name == "phone":
        d.rounded_rectangle((18, 4, 46, 60), radius=6, outline=INK, width=W)
        d.ellipse((29, 50, 35, 56), fill=INK)
    elif name == "location":
        d.ellipse((14, 4, 50, 40), fill=INK)
        d.polygon([(16, 28), (48, 28), (32, 60)], fill=INK)
        d.ellipse((25, 14, 39, 28), fill=(0, 0, 0, 0))
    elif name == "cart":
        d.line([(4, 10), (14, 10), (22, 42), (52, 42), (58, 18), (16, 18)], fill=INK, width=W)
        d.ellipse((18, 46, 28, 56), fill=INK)
        d.ellipse((42, 46, 52, 56), fill=INK)
    elif name == "filter":
        d.polygon([(6, 8), (58, 8), (38, 32), (38, 56), (26, 48), (26, 32)], fill=INK)
    elif name == "grid":
        for x in (8, 36):
            for y in (8, 36):
                d.rectangle((x, y, x + 20, y + 20), fill=INK)
    elif name == "list":
        for y in (14, 32, 50):
            d.ellipse((6, y - 4, 14, y + 4), fill=INK)
            d.line((22, y, 58, y), fill=INK, width=W)
    elif name == "edit":
        d.polygon([(44, 6), (58, 20), (22, 56), (8, 56), (8, 42)], fill=INK)
    elif name == "info":
        d.ellipse((4, 4, 60, 60), fill=INK)
        d.rectangle((28, 28, 36, 50), fill=(0, 0, 0, 0))
        d.ellipse((28, 14, 36, 22), fill=(0, 0, 0, 0))
    elif name == "warning":
        d.polygon([(32, 4), (60, 58), (4, 58)], fill=INK)
        d.rectangle((29, 22, 35, 42), fill=(0, 0, 0, 0))
        d.rectangle((29, 47, 35, 53), fill=(0, 0, 0, 0))
    elif name == "help":
        d.ellipse((4, 4, 60, 60), outline=INK, width=W)
        d.arc((20, 14, 44, 36), 180, 90, fill=INK, width=W)
        d.line((32, 36, 32, 42), fill=INK, width=W)
        d.ellipse((29, 46, 35, 52), fill=INK)
    elif name == "eye":
        d.ellipse((4, 16, 60, 48), outline=INK, width=W)
        d.ellipse((22, 22, 42, 42), fill=INK)
    elif name == "link":
        d.rounded_rectangle((4, 22, 36, 42), radius=10, outline=INK, width=W)
        d.rounded_rectangle((28, 22, 60, 42), radius=10, outline=INK, width=W)
    elif name == "cloud":
        d.ellipse((6, 26, 30, 50), fill=INK)
        d.ellipse((18, 12, 46, 40), fill=INK)
        d.ellipse((34, 24, 58, 48), fill=INK)
        d.rectangle((18, 36, 46, 50), fill=INK)
    elif name == "folder":
        d.polygon([(4, 12), (24, 12), (30, 20), (60, 20), (60, 54), (4, 54)], fill=INK)
    elif name == "file":
        d.polygon([(12, 4), (40, 4), (54, 18), (54, 60), (12, 60)], outline=INK, width=W)
        d.line([(40, 4), (40, 18), (54, 18)], fill=INK, width=W)
    elif name == "power":
        d.arc((8, 10, 56, 58), 300, 240, fill=INK, width=W + 1)
        d.line((32, 4, 32, 30), fill=INK, width=W + 1)
    elif name == "volume":
        d.polygon([(6, 24), (18, 24), (32, 10), (32, 54), (18, 40), (6, 40)], fill=INK)
        d.arc((24, 18, 48, 46), 300, 60, fill=INK, width=W)
        d.arc((26, 8, 60, 56), 300, 60, fill=INK, width=W)
    elif name == "mic":
        d.rounded_rectangle((22, 4, 42, 38), radius=10, fill=INK)
        d.arc((12, 18, 52, 48), 0, 180, fill=INK, width=W)
        d.line((32, 48, 32, 58), fill=INK, width=W)
    elif name == "globe":
        d.ellipse((4, 4, 60, 60), outline=INK, width=W)
        d.ellipse((20, 4, 44, 60), outline=INK, width=4)
        d.line((4, 32, 60, 32), fill=INK, width=4)
    elif name == "send":
        d.polygon([(4, 28), (60, 6), (40, 58), (30, 36)], fill=INK)
    else:
        raise ValueError(name)
    return img


ICONS = [
    ("magnifier", "search"),
    ("home", "go to the home page"),
    ("gear", "settings"),
    ("heart", "like or add to favorites"),
    ("star", "rating or favorite"),
    ("star-outline", "add to favorites"),
    ("close", "close"),
    ("plus", "add or create"),
    ("minus", "remove or decrease"),
    ("check", "confirm or done"),
    ("arrow-up", "move up"),
    ("arrow-down", "move down"),
    ("arrow-left", "go back"),
    ("arrow-right", "go forward"),
    ("chevron-up", "collapse"),
    ("chevron-down", "expand"),
    ("chevron-left", "previous"),
    ("chevron-right", "next"),
    ("menu", "open the navigation menu"),
    ("more", "more options"),
    ("user", "user profile or account"),
    ("bell", "notifications"),
    ("mail", "email or messages"),
    ("trash", "delete"),
    ("lock", "locked or secure"),
    ("unlock", "unlocked"),
    ("play", "play"),
    ("pause", "pause"),
    ("stop", "stop"),
    ("download", "download"),
    ("upload", "upload"),
    ("refresh", "refresh or reload"),
    ("share", "share"),
    ("bookmark", "bookmark or save for later"),
    ("calendar", "calendar or pick a date"),
    ("clock", "time or history"),
    ("camera", "take a photo"),
    ("image", "image or photo gallery"),
    ("phone", "mobile phone or call"),
    ("location", "location or map"),
    ("cart", "shopping cart"),
    ("filter", "filter results"),
    ("grid", "grid view"),
    ("list", "list view"),
    ("edit", "edit"),
    ("info", "information"),
    ("warning", "warning"),
    ("help", "help"),
    ("eye", "show or view"),
    ("link", "link"),
    ("cloud", "cloud storage"),
    ("folder", "folder"),
    ("file", "document or file"),
    ("power", "power or sign out"),
    ("volume", "sound volume"),
    ("mic", "voice input or microphone"),
    ("globe", "language or website"),
    ("send", "send"),
]


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = []
    for name, description in ICONS[:50]:
        file = f"{name}.png"
        draw(name).save(out / file, optimize=False, compress_level=9)
        manifest.append({"name": name, "file": file, "description": description})
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/icons")
