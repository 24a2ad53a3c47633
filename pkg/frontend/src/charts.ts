/** Minimal dependency-free SVG bar charts for the overview console. */

const SVG_NS = "http://www.w3.org/2000/svg";

export interface Bar {
  label: string;
  value: number;
}

export function renderBarChart(title: string, bars: Bar[], cssClass: string): SVGSVGElement {
  const width = Math.max(240, bars.length * 72 + 48);
  const height = 180;
  const plotHeight = 130;
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", `chart ${cssClass}`);
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("role", "img");

  const caption = document.createElementNS(SVG_NS, "text");
  caption.setAttribute("x", "8");
  caption.setAttribute("y", "14");
  caption.setAttribute("class", "chart-title");
  caption.textContent = title;
  svg.appendChild(caption);

  const peak = Math.max(...bars.map((b) => b.value), 0);
  bars.forEach((bar, i) => {
    const scaled = peak > 0 ? Math.max(2, Math.round((bar.value / peak) * plotHeight)) : 2;
    const x = 24 + i * 72;
    const rect = document.createElementNS(SVG_NS, "rect");
    rect.setAttribute("class", "bar");
    rect.setAttribute("data-exec-id", bar.label);
    rect.setAttribute("data-value", String(bar.value));
    rect.setAttribute("x", String(x));
    rect.setAttribute("y", String(24 + plotHeight - scaled));
    rect.setAttribute("width", "48");
    rect.setAttribute("height", String(scaled));
    const tooltip = document.createElementNS(SVG_NS, "title");
    tooltip.textContent = `${bar.label}: ${bar.value}`;
    rect.appendChild(tooltip);
    svg.appendChild(rect);

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("class", "bar-label");
    label.setAttribute("x", String(x + 24));
    label.setAttribute("y", String(height - 8));
    label.setAttribute("text-anchor", "middle");
    label.textContent = bar.label;
    svg.appendChild(label);
  });
  return svg;
}
