#!/usr/bin/env python3
"""Regenerates the listing-page snapshot corpus and its golden CSV.

Each page is written from a list of product dicts; the golden rows come
from the same dicts, never from parsing the HTML, so the extractor is
checked against what the pages were built to contain.

    python3 tests/fixtures/make_snapshots.py
"""

import csv
import io
import pathlib

HERE = pathlib.Path(__file__).resolve().parent
SNAPSHOTS = HERE / "snapshots"
COLUMNS = ["id", "name", "ram_gb", "storage_gb", "front_cam_mp", "back_cam_mp",
           "battery_mah", "original_price", "sale_price"]

BRANDS = ["Acme", "Nimbus", "Orion", "Vertex", "Zephyr", "Kestrel", "Lumen", "Quanta"]


def product(n):
    ram = [1, 2, 3, 4, 6, 8][n % 6]
    storage = [8, 16, 32, 64, 128, 256][(n * 5) % 6]
    front = [0, 2, 5, 8, 13, 16][(n * 7) % 6]
    back = [5, 8, 13, 16, 48, 64][(n * 11) % 6]
    battery = 2000 + 250 * ((n * 3) % 13)
    mrp = 3999 + 1500 * ((n * 17) % 29)
    sale = mrp - 100 * ((n * 13) % 9)
    return {
        "id": f"SKU{1000 + n}",
        "name": f"{BRANDS[n % len(BRANDS)]} {chr(65 + n % 26)}{10 + n}",
        "ram_gb": str(ram),
        "storage_gb": str(storage),
        "front_cam_mp": str(front),
        "back_cam_mp": str(back),
        "battery_mah": str(battery),
        "original_price": str(mrp),
        "sale_price": str(sale),
    }


def grouped(v):
    """Indian-style digit grouping, as the site prints prices."""
    s = str(v)
    if len(s) <= 3:
        return s
    head, tail = s[:-3], s[-3:]
    parts = []
    while len(head) > 2:
        parts.insert(0, head[-2:])
        head = head[:-2]
    if head:
        parts.insert(0, head)
    return ",".join(parts) + "," + tail


def card(p, *, upper=False, quote='"', drop=(), ram_text=None, front_text=None,
         close_lis=True, close_card=True, css="product-card", spaced=False,
         price_text=None, battery_text=None):
    def tag(name):
        return name.upper() if upper else name

    def attr(value):
        return f"{quote}{value}{quote}" if quote else value

    nl = "\n" if spaced else ""
    li_end = f"</{tag('li')}>" if close_lis else ""
    out = [f'<{tag("div")} class={attr(css)} data-pid={attr(p["id"].lower())}>']
    out.append(f'  <{tag("a")} class={attr("title")} href="/p/{p["id"]}">{nl}  {p["name"]}  {nl}</{tag("a")}>')
    if "id" not in drop:
        out.append(f'  <{tag("span")} class={attr("sku")}>SKU: {p["id"]}</{tag("span")}>')
    out.append(f'  <{tag("ul")} class={attr("specs")}>')
    ram = ram_text if ram_text is not None else f"{p['ram_gb']} GB RAM"
    out.append(f'    <{tag("li")} class={attr("spec-ram")}>{nl}{ram}{nl}{li_end}')
    out.append(f'    <{tag("li")} class={attr("spec-rom")}>{p["storage_gb"]} GB ROM{li_end}')
    front = front_text if front_text is not None else f"{p['front_cam_mp']}MP Front Camera"
    out.append(f'    <{tag("li")} class={attr("spec-front")}>{front}{li_end}')
    out.append(f'    <{tag("li")} class={attr("spec-back")}>{p["back_cam_mp"]}MP Rear Camera{li_end}')
    battery = battery_text if battery_text is not None else f"{p['battery_mah']} mAh Battery"
    out.append(f'    <{tag("li")} class={attr("spec-battery")}>{battery}{li_end}')
    out.append(f"  </{tag('ul')}>")
    mrp, now = p["original_price"], p["sale_price"]
    if price_text:
        mrp, now = price_text
    else:
        mrp, now = grouped(mrp), grouped(now)
    out.append(f'  <{tag("div")} class={attr("price-mrp")}>MRP <s>&#8377;{mrp}</s></{tag("div")}>')
    if "sale_price" not in drop:
        out.append(f'  <{tag("div")} class={attr("price-now")}>Now &#8377; {now}</{tag("div")}>')
    if close_card:
        out.append(f"</{tag('div')}>")
    return "\n".join(out)


def page(title, cards, *, head_extra="", crlf=False):
    body = "\n".join(cards)
    html = f"""<!DOCTYPE html>
<html>
<head>
<meta charset="utf-8">
<title>{title}</title>
{head_extra}
</head>
<body>
<header><span class="sku">SKU: HEADER-DECOY</span><div class="price-mrp">&#8377;1</div></header>
<main id="results">
{body}
</main>
<footer>Prices include taxes.</footer>
</body>
</html>
"""
    return html.replace("\n", "\r\n") if crlf else html


def expected(p, **blank):
    row = dict(p)
    for field, value in blank.items():
        row[field] = value
    return row


def build():
    pages = {}
    golden = []
    n = 0

    def take():
        nonlocal n
        n += 1
        return product(n)

    def simple(name, count, **kw):
        items = [take() for _ in range(count)]
        pages[name] = page(name, [card(p, **kw) for p in items])
        golden.extend(items)

    simple("page-01.html", 2)

    items = [take(), take()]
    pages["page-02.html"] = page("upper", [card(p, upper=True, quote="'") for p in items])
    golden.extend(items)

    items = [take(), take()]
    decoy = ('<!-- <div class="product-card"><span class="sku">SKU: COMMENTED</span></div> -->\n'
             '<script>var tpl = "<div class=\\"product-card\\"><span class=\\"sku\\">SKU: SCRIPTED</span></div>";</script>')
    pages["page-03.html"] = page("comments", [decoy] + [card(p) for p in items])
    golden.extend(items)

    a, b = take(), take()
    pages["page-04.html"] = page("na ram", [card(a, ram_text="N/A"), card(b)])
    golden.extend([expected(a, ram_gb=""), b])

    simple("page-05.html", 1)

    items = [take(), take()]
    pages["page-06.html"] = page("unclosed li", [card(p, close_lis=False) for p in items])
    golden.extend(items)

    a, b = take(), take()
    pages["page-07.html"] = page("no sku", [card(a), card(b, drop=("id",))])
    golden.extend([a, expected(b, id="page-07-2")])

    pages["page-08.html"] = page("no results", ['<p class="empty">No products found.</p>'])

    a = take()
    pages["page-09.html"] = page("not on sale", [card(a, drop=("sale_price",))])
    golden.append(expected(a, sale_price=""))

    simple("page-10.html", 2, spaced=True)

    a, b = take(), take()
    pages["page-11.html"] = page("featured", [card(a, css="product-card featured"), card(b)])
    golden.extend([a, b])

    a, b = take(), take()
    a["name"] = a["name"] + ", Ocean Blue"
    b["name"] = b["name"] + ' "Lite"'
    pages["page-12.html"] = page("odd names", [card(a), card(b)])
    golden.extend([a, b])

    a, b = take(), take()
    pages["page-13.html"] = page("unclosed card", [card(a, close_card=False), card(b)])
    golden.extend([a, b])

    a = take()
    pages["page-14.html"] = page(
        "plain prices", [card(a, price_text=(a["original_price"] + ".00", a["sale_price"] + ".00"))])
    golden.append(expected(a, original_price=a["original_price"] + ".00",
                           sale_price=a["sale_price"] + ".00"))

    simple("page-15.html", 2, quote="")

    items = [take(), take()]
    decoys = '<aside><div class="product-card-ad">Sponsored</div></aside>'
    pages["page-16.html"] = page("decoys", [decoys] + [card(p) for p in items])
    golden.extend(items)

    simple("page-17.html", 3)

    a = take()
    a["battery_mah"] = "5000"
    pages["page-18.html"] = page("grouped battery", [card(a, battery_text="5,000 mAh Battery")])
    golden.append(a)

    a, b = take(), take()
    pages["page-19.html"] = page("no front camera", [card(a, front_text="No front camera"), card(b)])
    golden.extend([expected(a, front_cam_mp=""), b])

    items = [take(), take()]
    pages["page-20.html"] = page("crlf", [card(p) for p in items], crlf=True)
    golden.extend(items)

    return pages, golden


def main():
    pages, golden = build()
    SNAPSHOTS.mkdir(exist_ok=True)
    for old in SNAPSHOTS.glob("*.html"):
        old.unlink()
    for name, html in pages.items():
        (SNAPSHOTS / name).write_bytes(html.encode("utf-8"))

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in golden:
        w.writerow([row[c] for c in COLUMNS])
    (HERE / "golden.csv").write_text(buf.getvalue(), encoding="utf-8")
    print(f"{len(pages)} pages, {len(golden)} records")


if __name__ == "__main__":
    main()
