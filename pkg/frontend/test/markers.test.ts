import { beforeEach, describe, expect, it, vi } from "vitest";

import { ModelEditor } from "../src/editor.js";

function editorWithLines(count: number): ModelEditor {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const editor = new ModelEditor(root);
  editor.setText(Array.from({ length: count }, (_v, i) => `line ${i + 1}`).join("\n"));
  return editor;
}

describe("violation markers", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("badges the marked line with its count", () => {
    const editor = editorWithLines(20);
    editor.setViolationMarkers([{ line: 12, count: 10 }]);
    const cell = editor.gutter.querySelector('[data-line="12"]');
    const badge = cell!.querySelector(".violation-badge");
    expect(badge).not.toBeNull();
    expect(badge!.textContent).toBe("10");
    expect(editor.gutter.querySelectorAll(".violation-badge")).toHaveLength(1);
  });

  it("renders no decorations for empty markers", () => {
    const editor = editorWithLines(5);
    editor.setViolationMarkers([]);
    expect(editor.gutter.querySelectorAll(".violation-badge")).toHaveLength(0);
  });

  it("ignores out-of-range markers with a console warning", () => {
    const warn = vi.spyOn(console, "warn").mockImplementation(() => {});
    const editor = editorWithLines(5);
    editor.setViolationMarkers([{ line: 99, count: 3 }, { line: 2, count: 1 }]);
    expect(editor.gutter.querySelectorAll(".violation-badge")).toHaveLength(1);
    expect(warn).toHaveBeenCalledWith(expect.stringContaining("99"));
    warn.mockRestore();
  });

  it("clears markers when the file content is replaced", () => {
    const editor = editorWithLines(5);
    editor.setViolationMarkers([{ line: 2, count: 1 }]);
    editor.setText("fresh\ncontent");
    expect(editor.gutter.querySelectorAll(".violation-badge")).toHaveLength(0);
  });

  it("marks diagnostic lines in the gutter", () => {
    const editor = editorWithLines(5);
    editor.setDiagnostics([{ line: 3, column: 5, severity: "error", message: "boom" }]);
    const cell = editor.gutter.querySelector('[data-line="3"]');
    expect(cell!.classList.contains("has-error")).toBe(true);
    expect(cell!.querySelector(".diagnostic-mark")).not.toBeNull();
  });
});
