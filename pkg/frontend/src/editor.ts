/** Code editor panel: a plain textarea with a synchronized gutter that
 * carries line numbers, parse diagnostics and deadline-violation badges. */

import { DiagnosticRecord } from "./api.js";

export interface ViolationMarker {
  line: number;
  count: number;
}

export class ModelEditor {
  readonly gutter: HTMLElement;
  readonly textarea: HTMLTextAreaElement;
  private diagnostics: DiagnosticRecord[] = [];
  private markers: ViolationMarker[] = [];

  constructor(root: HTMLElement) {
    root.classList.add("editor");
    this.gutter = document.createElement("div");
    this.gutter.className = "editor-gutter";
    this.textarea = document.createElement("textarea");
    this.textarea.className = "editor-text";
    this.textarea.spellcheck = false;
    this.textarea.addEventListener("input", () => this.renderGutter());
    this.textarea.addEventListener("scroll", () => {
      this.gutter.scrollTop = this.textarea.scrollTop;
    });
    root.append(this.gutter, this.textarea);
    this.renderGutter();
  }

  get value(): string {
    return this.textarea.value;
  }

  setText(text: string): void {
    this.textarea.value = text;
    this.diagnostics = [];
    this.markers = [];
    this.renderGutter();
  }

  lineCount(): number {
    return this.textarea.value.split("\n").length;
  }

  setDiagnostics(diagnostics: DiagnosticRecord[]): void {
    this.diagnostics = diagnostics;
    this.renderGutter();
  }

  /** Badge each marked line with its violation count; markers beyond the
   * end of the file are ignored with a console warning. */
  setViolationMarkers(markers: ViolationMarker[]): void {
    const lines = this.lineCount();
    const kept: ViolationMarker[] = [];
    for (const marker of markers) {
      if (marker.line < 1 || marker.line > lines) {
        console.warn(`ignoring violation marker for out-of-range line ${marker.line}`);
        continue;
      }
      kept.push(marker);
    }
    this.markers = kept;
    this.renderGutter();
  }

  clearAnnotations(): void {
    this.diagnostics = [];
    this.markers = [];
    this.renderGutter();
  }

  private renderGutter(): void {
    const lines = this.lineCount();
    const badgeByLine = new Map<number, number>();
    for (const m of this.markers) {
      badgeByLine.set(m.line, (badgeByLine.get(m.line) ?? 0) + m.count);
    }
    const diagLines = new Map<number, string>();
    for (const d of this.diagnostics) {
      if (!diagLines.has(d.line)) {
        diagLines.set(d.line, d.message);
      }
    }
    this.gutter.replaceChildren();
    for (let line = 1; line <= lines; line += 1) {
      const cell = document.createElement("div");
      cell.className = "gutter-line";
      cell.dataset.line = String(line);
      const number = document.createElement("span");
      number.className = "line-number";
      number.textContent = String(line);
      cell.appendChild(number);
      const count = badgeByLine.get(line);
      if (count !== undefined) {
        const badge = document.createElement("span");
        badge.className = "violation-badge";
        badge.textContent = String(count);
        badge.title = `${count} deadline violation(s) recorded at this call`;
        cell.appendChild(badge);
      }
      const message = diagLines.get(line);
      if (message !== undefined) {
        cell.classList.add("has-error");
        const mark = document.createElement("span");
        mark.className = "diagnostic-mark";
        mark.textContent = "!";
        mark.title = message;
        cell.appendChild(mark);
      }
      this.gutter.appendChild(cell);
    }
  }
}
