"""Writes the fixture snapshot corpus and a rough screenshot for each page."""

import hashlib
import json
import sys
from pathlib import Path

from PIL import Image, ImageDraw


class E:
    def __init__(self, tag, rect=None, text="", attrs=None, role="", style=None,
                 occluded=False, children=()):
        self.tag = tag
        self.rect = rect
        self.text = text
        self.attrs = attrs or {}
        self.role = role
        self.style = {"display": "block", "visibility": "visible", "opacity": 1.0,
                      "cursor": "auto", "position": "static", "overflow_clipped": False}
        self.style.update(style or {})
        self.occluded = occluded
        self.children = list(children)


def inline(style=None):
    s = {"display": "inline"}
    s.update(style or {})
    return s


def pointer(style=None):
    s = {"cursor": "pointer"}
    s.update(style or {})
    return s


HIDDEN_HEAD = E("head", None, style={"display": "none"}, children=[
    E("meta", None, style={"display": "none"}),
    E("script", None, text="window.dataLayer=[];", style={"display": "none"}),
])


def page(w, h, body_children, page_h=None, scroll_y=0):
    page_h = page_h or h
    return E("html", (0, -scroll_y, w, page_h - scroll_y), children=[
        HIDDEN_HEAD,
        E("body", (0, -scroll_y, w, page_h - scroll_y), children=body_children),
    ])


def flatten(root):
    nodes = []

    def visit(e, parent):
        nid = len(nodes)
        rect = None
        if e.rect is not None:
            x1, y1, x2, y2 = e.rect
            rect = {"x1": x1, "y1": y1, "x2": x2, "y2": y2}
        nodes.append({"id": nid, "parent": parent, "tag": e.tag, "role": e.role,
                      "attrs": e.attrs, "text": e.text, "rect": rect, "style": e.style,
                      "occluded": e.occluded})
        for c in e.children:
            visit(c, nid)

    visit(root, None)
    return nodes


FIXTURES = {}


def fixture(fn):
    FIXTURES[fn.__name__] = fn
    return fn


@fixture
def google_home():
    w, h = 1920, 1080
    foot = [("About", 30), ("Advertising", 100), ("Business", 200), ("How Search works", 290)]
    foot_right = [("Privacy", 1640), ("Terms", 1710), ("Settings", 1780)]
    body = [
        E("div", (0, 0, w, 60), children=[
            E("a", (1660, 18, 1705, 42), "Gmail", {"href": "https://mail.google.com/"}, style=inline(pointer())),
            E("a", (1720, 18, 1772, 42), "Images", {"href": "https://www.google.com/imghp"}, style=inline(pointer())),
            E("div", (1790, 12, 1830, 52), role="button", attrs={"aria-label": "Google apps"}, style=pointer(), children=[
                E("svg", (1798, 20, 1822, 44), style=inline()),
            ]),
            E("a", (1845, 12, 1905, 48), "Sign in", {"href": "https://accounts.google.com/"}, style=inline(pointer())),
        ]),
        E("img", (824, 300, 1096, 392), attrs={"alt": "Google", "src": "/logo.png"}, style=inline()),
        E("form", (460, 420, 1460, 470), children=[
            E("div", (460, 420, 1460, 470), children=[
                E("svg", (480, 435, 500, 455), style=inline()),
                E("textarea", (512, 428, 1370, 462), attrs={"aria-label": "Search", "title": "Search"}),
                E("div", (1380, 430, 1410, 460), role="button", attrs={"aria-label": "Search by voice"}, style=pointer(), children=[
                    E("svg", (1384, 434, 1406, 456), style=inline()),
                ]),
                E("div", (1420, 430, 1450, 460), role="button", attrs={"aria-label": "Search by image"}, style=pointer(), children=[
                    E("img", (1424, 434, 1446, 456), attrs={"src": "/lens.png"}, style=inline()),
                ]),
            ]),
            E("div", (700, 500, 1220, 540), children=[
                E("input", (728, 500, 868, 536), attrs={"type": "submit", "aria-label": "Google Search", "value": "Google Search"}, style=inline(pointer())),
                E("input", (880, 500, 1030, 536), attrs={"type": "submit", "aria-label": "I'm Feeling Lucky", "value": "I'm Feeling Lucky"}, style=inline(pointer())),
            ]),
        ]),
        E("div", (640, 570, 1280, 594), children=[
            E("span", (700, 572, 850, 592), "Google offered in:", style=inline()),
            E("a", (858, 572, 920, 592), "Deutsch", {"href": "/?hl=de"}, style=inline(pointer())),
            E("a", (928, 572, 1000, 592), "Français", {"href": "/?hl=fr"}, style=inline(pointer())),
        ]),
        E("div", (0, 1000, w, 1080), children=[
            E("div", (0, 1000, w, 1040), children=[E("span", (30, 1010, 100, 1030), "Germany", style=inline())]),
            E("div", (0, 1040, w, 1080), children=
                [E("a", (x, 1050, x + 12 + 8 * len(t), 1070), t, {"href": "#"}, style=inline(pointer())) for t, x in foot]
                + [E("a", (x, 1050, x + 12 + 8 * len(t), 1070), t, {"href": "#"}, style=inline(pointer())) for t, x in foot_right]),
        ]),
    ]
    return dict(url="https://www.google.com/", title="Google", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def hidden_everything():
    w, h = 1366, 768
    body = [
        E("div", (0, 0, 400, 100), style={"display": "none"}, children=[
            E("p", (10, 10, 200, 30), "inside display none"),
            E("a", (10, 40, 100, 60), "hidden link", {"href": "#"}),
        ]),
        E("p", (0, 120, 400, 140), "visibility hidden", style={"visibility": "hidden"}),
        E("div", (0, 150, 400, 200), style={"opacity": 0.02}, children=[
            E("p", (0, 150, 400, 170), "under transparent ancestor"),
        ]),
        E("p", (0, -300, 400, -280), "above the viewport"),
        E("p", (0, 900, 400, 920), "below the viewport"),
        E("p", (1400, 10, 1500, 30), "right of the viewport"),
        E("button", (500, 300, 600, 340), "Covered", occluded=True),
        E("p", (0, 220, 400, 240), "clipped away", style={"overflow_clipped": True}),
        E("p", None, "zero area"),
        E("img", (600, 600, 602, 640), attrs={"alt": "two pixels wide"}),
        E("span", (700, 10, 760, 30), "collapsed", style=inline({"visibility": "collapse"})),
        E("img", (800, 400, 900, 500), attrs={"alt": "display none image"}, style={"display": "none"}),
    ]
    return dict(url="https://fixtures.test/hidden", title="Nothing to see", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def button_icon_text():
    w, h = 1280, 720
    body = [
        E("button", (500, 300, 640, 340), style=pointer(), children=[
            E("svg", (512, 310, 532, 330), style=inline(), children=[E("path", (514, 312, 530, 328), style=inline())]),
            E("span", (540, 310, 600, 330), "Search", style=inline()),
        ]),
    ]
    return dict(url="https://fixtures.test/button", title="Button with icon", meta="One button.", w=w, h=h, root=page(w, h, body))


@fixture
def opacity_chain():
    w, h = 1536, 864
    body = [
        E("div", (100, 100, 700, 140), style={"opacity": 0.2}, children=[
            E("p", (100, 100, 700, 140), "faded twice", style={"opacity": 0.2}),
        ]),
        E("div", (100, 160, 700, 200), style={"opacity": 0.5}, children=[
            E("p", (100, 160, 700, 200), "half and half", style={"opacity": 0.5}),
        ]),
        E("div", (100, 220, 400, 420), style={"opacity": 0.3}, children=[
            E("img", (100, 220, 400, 420), attrs={"alt": "barely visible photo"}, style={"opacity": 0.2}),
        ]),
        E("p", (100, 440, 700, 480), "exactly at the floor", style={"opacity": 0.05}),
        E("p", (100, 500, 700, 540), "just above the floor", style={"opacity": 0.051}),
        E("div", (100, 560, 700, 600), style={"opacity": 0.9}, children=[
            E("div", (100, 560, 700, 600), style={"opacity": 0.9}, children=[
                E("a", (100, 560, 300, 600), "Deep link", {"href": "#"}, style={"opacity": 0.1}),
            ]),
        ]),
    ]
    return dict(url="https://fixtures.test/opacity", title="Opacity", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def overflow_clip():
    w, h = 1440, 900
    rows = []
    for i in range(8):
        y = 200 + 40 * i
        rows.append(E("li", (200, y, 600, y + 40), f"Row {i + 1}", style={"overflow_clipped": y >= 360}))
    body = [
        E("h2", (200, 150, 600, 190), "Scrollable list"),
        E("ul", (200, 200, 600, 360), children=rows),
        E("div", (700, 200, 900, 260), children=[
            E("button", (700, 200, 900, 260), "Clipped button", style={"overflow_clipped": True}),
        ]),
    ]
    return dict(url="https://fixtures.test/overflow", title="Overflow", meta="A clipped list.", w=w, h=h, root=page(w, h, body))


@fixture
def aria_fallbacks():
    w, h = 1280, 800
    body = [
        E("button", (20, 20, 60, 60), attrs={"aria-label": "Close dialog"}, style=pointer(), children=[
            E("svg", (28, 28, 52, 52), style=inline()),
        ]),
        E("button", (80, 20, 120, 60), attrs={"title": "Settings"}, style=pointer()),
        E("a", (140, 20, 180, 60), attrs={"href": "/"}, style=inline(pointer()), children=[
            E("img", (144, 24, 176, 56), attrs={"alt": "Home"}, style=inline()),
        ]),
        E("a", (200, 20, 240, 60), attrs={"href": "/me", "title": "Open profile"}, style=inline(pointer())),
        E("img", (20, 100, 420, 300), attrs={"title": "Chart of sales"}),
        E("svg", (440, 100, 472, 132), attrs={"aria-label": "Notifications"}, style=inline()),
        E("img", (500, 100, 540, 140), attrs={"alt": "Logo", "aria-label": "Company logo", "title": "ACME"}, style=inline()),
        E("div", (20, 320, 300, 360), "Visible wins", attrs={"aria-label": "hidden label", "title": "tip"}),
        E("button", (320, 320, 400, 360), attrs={"alt": "alt on a button"}, style=pointer()),
        E("img", (420, 320, 460, 360), style=inline()),
        E("a", (480, 320, 560, 360), attrs={"href": "#", "aria-label": "  spaced   label  "}, style=inline(pointer())),
    ]
    return dict(url="https://fixtures.test/aria", title="Latent descriptions", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def paragraph_link():
    w, h = 1024, 768
    body = [
        E("p", (40, 40, 900, 64), children=[
            E("span", (40, 40, 260, 64), "Read the documentation or", style=inline()),
            E("a", (264, 40, 360, 64), "contact us", {"href": "/contact"}, style=inline(pointer())),
        ]),
        E("p", (40, 100, 900, 124), "Raw text next to ", children=[
            E("a", (180, 100, 260, 124), "a link", {"href": "/x"}, style=inline(pointer())),
        ]),
        E("p", (40, 160, 900, 184), "Plain paragraph with ", children=[
            E("em", (200, 160, 280, 184), "emphasis", style=inline()),
            E("strong", (284, 160, 340, 184), "inside", style=inline()),
        ]),
    ]
    return dict(url="https://fixtures.test/paragraph", title="Paragraphs", meta="Text and links.", w=w, h=h, root=page(w, h, body))


@fixture
def code_blocks():
    w, h = 768, 1024
    body = [
        E("pre", (20, 20, 740, 200), children=[
            E("code", (20, 20, 740, 200), "int main() {\n  return 0;\n}", style=inline()),
        ]),
        E("p", (20, 220, 740, 244), children=[
            E("span", (20, 220, 60, 244), "Run", style=inline()),
            E("code", (64, 220, 160, 244), "make test", style=inline()),
            E("span", (164, 220, 260, 244), "before pushing.", style=inline()),
        ]),
        E("code", (20, 260, 200, 284), "", style=inline()),
    ]
    return dict(url="https://fixtures.test/code", title="Code", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def form_inputs():
    w, h = 810, 1080
    body = [
        E("form", (20, 20, 790, 600), children=[
            E("label", (20, 20, 200, 44), "Email"),
            E("input", (20, 48, 400, 80), attrs={"type": "email", "placeholder": "you@example.com", "title": "Email address"}),
            E("label", (20, 100, 200, 124), "Favourite colour"),
            E("select", (20, 128, 200, 160), style=pointer(), children=[
                E("option", (20, 128, 200, 160), "Red"),
                E("option", None, "Green"),
            ]),
            E("textarea", (20, 180, 600, 300), attrs={"aria-label": "Message"}),
            E("input", (20, 320, 40, 340), attrs={"type": "checkbox"}),
            E("input", (20, 360, 160, 396), attrs={"type": "reset", "aria-label": "Clear form"}, style=pointer()),
            E("button", (180, 360, 320, 396), "Send", attrs={"type": "submit"}, style=pointer()),
        ]),
    ]
    return dict(url="https://fixtures.test/form", title="Contact form", meta="Write to us.", w=w, h=h, root=page(w, h, body))


@fixture
def mobile_nav():
    w, h = 360, 640
    body = [
        E("header", (0, 0, 360, 56), children=[
            E("button", (8, 8, 48, 48), attrs={"aria-label": "Open menu"}, style=pointer(), children=[
                E("svg", (16, 16, 40, 40), style=inline()),
            ]),
            E("img", (120, 12, 240, 44), attrs={"alt": "Shop"}),
            E("a", (312, 8, 352, 48), attrs={"href": "/cart", "aria-label": "Cart"}, style=pointer(), children=[
                E("svg", (320, 16, 344, 40), style=inline()),
            ]),
        ]),
        E("h1", (16, 72, 344, 110), "Summer sale"),
        E("a", (16, 120, 344, 420), attrs={"href": "/sandals"}, style=pointer(), children=[
            E("img", (16, 120, 344, 380), attrs={"alt": ""}),
            E("span", (16, 388, 200, 412), "Sandals", style=inline()),
        ]),
        E("p", (16, 430, 344, 470), "Free shipping on orders over 50 euros."),
    ]
    return dict(url="https://shop.fixtures.test/", title="Shop", meta="Summer sale on sandals.", w=w, h=h, root=page(w, h, body))


@fixture
def scrolled_page():
    w, h = 375, 667
    s = 1200
    body = [
        E("h1", (16, 40 - s, 359, 80 - s), "Top heading"),
        E("p", (16, 1180 - s, 359, 1240 - s), "Paragraph crossing the top edge."),
        E("p", (16, 1300 - s, 359, 1340 - s), "Fully visible paragraph."),
        E("a", (16, 1820 - s, 200, 1900 - s), "Link crossing the bottom edge", {"href": "#"}),
        E("p", (16, 2000 - s, 359, 2040 - s), "Below the fold."),
        E("div", (0, 0, 375, 48), style={"position": "fixed"}, children=[
            E("button", (8, 8, 120, 40), "Back to top", style=pointer()),
        ]),
    ]
    return dict(url="https://fixtures.test/long", title="Long page", meta="", w=w, h=h,
                root=page(w, h, body, page_h=2400, scroll_y=s), scroll_y=s, capture_index=1)


@fixture
def occlusion_modal():
    w, h = 1920, 1080
    body = [
        E("main", (0, 0, w, h), children=[
            E("h1", (100, 100, 800, 160), "Welcome", occluded=True),
            E("button", (100, 200, 300, 250), "Start", style=pointer(), occluded=True),
        ]),
        E("div", (0, 0, w, h), style={"position": "fixed", "opacity": 0.6}),
        E("div", (660, 390, 1260, 690), attrs={"role": "dialog"}, style={"position": "fixed"}, children=[
            E("p", (700, 420, 1220, 460), "We use cookies. Accept them?"),
            E("button", (700, 600, 900, 650), "Accept", style=pointer()),
            E("button", (1020, 600, 1220, 650), "Reject", style=pointer()),
        ]),
    ]
    return dict(url="https://fixtures.test/modal", title="Cookie banner", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def nested_links():
    w, h = 1366, 768
    body = [
        E("a", (40, 40, 440, 400), attrs={"href": "/story"}, style=pointer(), children=[
            E("img", (40, 40, 440, 265), attrs={"alt": "Harbour at dawn"}),
            E("h3", (40, 275, 440, 305), "Morning in the harbour"),
            E("p", (40, 310, 440, 390), "Fishing boats return before sunrise."),
        ]),
        E("button", (500, 40, 700, 90), style=pointer(), children=[
            E("a", (510, 50, 690, 80), "Link inside button", {"href": "#"}, style=inline()),
        ]),
        E("div", (760, 40, 1100, 90), role="link", style=pointer(), children=[
            E("span", (770, 50, 900, 80), "Role link", style=inline()),
            E("button", (910, 50, 1090, 80), "Nested button", style=pointer()),
        ]),
    ]
    return dict(url="https://news.fixtures.test/", title="News", meta="Local news.", w=w, h=h, root=page(w, h, body))


@fixture
def icon_toolbar():
    w, h = 1280, 720
    tools = ["Bold", "Italic", "Underline"]
    body = [
        E("div", (20, 20, 400, 64), role="toolbar", children=[
            E("button", (20 + 48 * i, 24, 60 + 48 * i, 60), attrs={"aria-label": t}, style=pointer(), children=[
                E("svg", (28 + 48 * i, 30, 52 + 48 * i, 54), style=inline()),
            ]) for i, t in enumerate(tools)
        ]),
        E("svg", (420, 24, 444, 48), style=inline()),
        E("img", (460, 20, 508, 68), attrs={"alt": "exactly 48"}),
        E("img", (520, 20, 569, 68), attrs={"alt": "49 wide"}),
        E("canvas", (20, 100, 620, 400), attrs={"aria-label": "Drawing area"}),
        E("picture", (640, 100, 680, 140), children=[
            E("img", (640, 100, 680, 140), attrs={"alt": "inner picture"}),
        ]),
    ]
    return dict(url="https://fixtures.test/toolbar", title="Editor", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def cursor_pointer():
    w, h = 1440, 900
    body = [
        E("div", (40, 40, 440, 140), "Clickable card", style=pointer()),
        E("span", (460, 40, 500, 80), style=inline(pointer())),
        E("div", (40, 160, 200, 200), "Docs", role="link", style=pointer()),
        E("div", (40, 220, 400, 260), "Plain text block"),
        E("li", (40, 280, 400, 320), "List item with pointer", style=pointer()),
    ]
    return dict(url="https://fixtures.test/cursor", title="Cursor", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def visibility_collapse():
    w, h = 1536, 864
    body = [
        E("table", (40, 40, 640, 160), children=[
            E("tbody", (40, 40, 640, 160), children=[
                E("tr", (40, 40, 640, 80), style={"visibility": "collapse"}, children=[
                    E("td", (40, 40, 340, 80), "Collapsed cell"),
                ]),
                E("tr", (40, 80, 640, 120), children=[
                    E("td", (40, 80, 340, 120), "Row one"),
                    E("td", (340, 80, 640, 120), "Row two"),
                ]),
            ]),
        ]),
        E("div", (40, 200, 640, 260), style={"visibility": "hidden"}, children=[
            E("p", (40, 200, 640, 230), "Visible child of hidden parent", style={"visibility": "visible"}),
        ]),
    ]
    return dict(url="https://fixtures.test/table", title="Table", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def tiny_elements():
    w, h = 1600, 900
    body = [
        E("img", (100, 100, 103, 103), attrs={"alt": "three by three"}),
        E("img", (120, 100, 122.9, 110), attrs={"alt": "too thin"}),
        E("a", (1597, 200, 1650, 230), "Edge link", {"href": "#"}),
        E("a", (1598, 260, 1650, 290), "Two pixels left", {"href": "#"}),
        E("p", (200, 897, 600, 940), "Three pixels at the bottom"),
        E("p", (200, -20, 600, 2.5), "Two and a half at the top"),
    ]
    return dict(url="https://fixtures.test/tiny", title="Tiny", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def article_text():
    w, h = 2560, 1440
    body = [
        E("article", (640, 80, 1920, 1400), children=[
            E("h1", (640, 80, 1920, 150), "How tides work"),
            E("p", (640, 170, 1920, 260), "Tides are caused by the gravity of the Moon and, to a lesser degree, the Sun."),
            E("p", (640, 280, 1920, 340), "This is a ", children=[
                E("strong", (760, 280, 900, 340), "very important", style=inline()),
            ], style={}),
            E("blockquote", (700, 360, 1860, 440), "The sea never stops moving."),
            E("ul", (640, 460, 1920, 600), children=[
                E("li", (680, 460, 1920, 500), "Spring tides"),
                E("li", (680, 500, 1920, 540), "Neap tides"),
                E("li", (680, 540, 1920, 580), children=[E("a", (680, 540, 900, 580), "More tides", {"href": "#"})]),
            ]),
            E("figure", (640, 620, 1920, 1300), children=[
                E("img", (640, 620, 1920, 1240), attrs={"alt": "Tide chart for one month"}),
                E("figcaption", (640, 1250, 1920, 1290), "Figure: tides over a month"),
            ]),
        ]),
    ]
    return dict(url="https://blog.fixtures.test/tides", title="How tides work", meta="An explanation of tides.", w=w, h=h, root=page(w, h, body))


@fixture
def whitespace_text():
    w, h = 1920, 1080
    body = [
        E("p", (40, 40, 800, 80), "  Lots   of\n\tspace here  "),
        E("button", (40, 100, 240, 140), "\n   Submit\n   order\n", style=pointer()),
        E("p", (40, 160, 800, 200), "   \n\t  "),
    ]
    return dict(url="https://fixtures.test/space", title="  Spaced \n title ", meta="Line one\nline two", w=w, h=h, root=page(w, h, body))


@fixture
def empty_page():
    w, h = 834, 1112
    return dict(url="https://fixtures.test/empty", title="", meta="", w=w, h=h, root=page(w, h, []))


@fixture
def search_results():
    w, h = 1920, 1080
    results = []
    for i, (title, url, snippet) in enumerate([
        ("Tide tables for the coast", "tides.example.org", "Daily high and low water times for every harbour."),
        ("Moon phases explained", "astro.example.com", "Why the Moon changes shape over a month."),
        ("Harbour webcam", "harbour.example.net", "Live pictures from the old port."),
    ]):
        y = 180 + 130 * i
        results.append(E("div", (180, y, 900, y + 110), children=[
            E("a", (180, y, 700, y + 56), attrs={"href": "https://" + url}, style=pointer(), children=[
                E("h3", (180, y, 700, y + 30), title),
                E("cite", (180, y + 34, 500, y + 54), url, style=inline()),
            ]),
            E("div", (180, y + 60, 900, y + 104), snippet),
        ]))
    body = [
        E("div", (180, 30, 900, 80), children=[
            E("input", (180, 30, 860, 74), attrs={"type": "text", "aria-label": "Search", "value": "tides"}),
        ]),
        E("div", (180, 140, 900, 170), "About 1,230 results"),
        *results,
        E("div", (180, 600, 700, 640), children=[
            E("a", (180 + 40 * i, 600, 210 + 40 * i, 640), t, {"href": "#"}, style=inline(pointer()))
            for i, t in enumerate(["1", "2", "3", "Next"])
        ]),
    ]
    return dict(url="https://search.fixtures.test/?q=tides", title="tides - Search", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def svg_children():
    w, h = 1024, 768
    body = [
        E("svg", (40, 40, 340, 240), attrs={"aria-label": "Sales chart"}, children=[
            E("g", (40, 40, 340, 240), children=[
                E("rect", (60, 100, 100, 240)),
                E("rect", (120, 60, 160, 240)),
                E("text", (60, 40, 200, 60), "Q1 Q2"),
            ]),
        ]),
        E("svg", (400, 40, 440, 80), children=[E("title", None, "unused title element")]),
    ]
    return dict(url="https://fixtures.test/svg", title="Charts", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def input_roles():
    w, h = 390, 844
    body = [
        E("div", (16, 16, 374, 96), "Write a comment", role="textbox", attrs={"contenteditable": "true"}),
        E("div", (16, 110, 120, 150), "Follow", role="button", style=pointer()),
        E("span", (140, 110, 220, 150), "@harbour", role="link", style=inline(pointer())),
        E("div", (16, 170, 374, 210), role="button"),
    ]
    return dict(url="https://social.fixtures.test/post", title="Post", meta="", w=w, h=h, root=page(w, h, body))


@fixture
def deep_nesting():
    w, h = 414, 896
    leaf = E("span", (20, 400, 200, 420), "Deep leaf text", style=inline())
    node = leaf
    for depth in range(30):
        node = E("div", (10, 390, 404, 430), children=[node])
    body = [node, E("p", (20, 500, 394, 540), "Shallow text")]
    return dict(url="https://fixtures.test/deep", title="Deep", meta="", w=w, h=h, root=page(w, h, body))


def snapshot_doc(spec):
    return {
        "url": spec["url"],
        "title": spec["title"],
        "meta_description": spec["meta"],
        "viewport": {"width": spec["w"], "height": spec["h"], "dpr": 1.0},
        "scroll": {"x": 0.0, "y": float(spec.get("scroll_y", 0))},
        "nodes": flatten(spec["root"]),
    }


def color_for(tag):
    d = hashlib.sha256(tag.encode()).digest()
    return (160 + d[0] % 90, 160 + d[1] % 90, 160 + d[2] % 90, 255)


def render(spec):
    w, h = spec["w"], spec["h"]
    img = Image.new("RGBA", (w, h), (255, 255, 255, 255))
    draw = ImageDraw.Draw(img)

    def visit(e, opacity, hidden):
        opacity *= e.style["opacity"]
        hidden = hidden or e.style["display"] == "none" or e.style["visibility"] in ("hidden", "collapse")
        if not hidden and e.rect and opacity > 0.05 and not e.style["overflow_clipped"] and e.tag not in ("html", "body"):
            x1, y1, x2, y2 = e.rect
            if e.tag in ("img", "svg", "canvas", "picture"):
                draw.rectangle((x1, y1, x2 - 1, y2 - 1), fill=color_for(e.tag))
            elif e.tag in ("a", "button", "input", "textarea", "select") or e.role in ("button", "link", "textbox"):
                draw.rectangle((x1, y1, x2 - 1, y2 - 1), outline=(60, 60, 160, 255), width=1)
            if e.text.strip():
                draw.text((x1 + 2, y1 + 2), " ".join(e.text.split())[:80], fill=(20, 20, 20, 255))
        for c in e.children:
            visit(c, opacity, hidden)

    visit(spec["root"], 1.0, False)
    return img


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    index = {}
    for name, fn in FIXTURES.items():
        spec = fn()
        doc = snapshot_doc(spec)
        (out / f"{name}.snapshot.json").write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
        render(spec).convert("RGB").save(out / f"{name}.png", optimize=False, compress_level=9)
        index[name] = {"url": spec["url"], "source": "fixture", "capture_index": spec.get("capture_index", 0)}
    (out / "index.json").write_text(json.dumps(index, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"{len(FIXTURES)} fixtures written to {out}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/snapshots")
