/**
 * Third pane: collapsible tree of answered instances, placeholders for the
 * forms still pending, and download links once the session is complete.
 */

import type { SessionView, TreeNode } from "./types.js";

function renderNode(node: TreeNode): HTMLElement {
  const details = document.createElement("details");
  details.open = true;
  details.className = "tree-node";
  details.dataset.instance = node.instance;

  const summary = document.createElement("summary");
  summary.textContent = `${node.label}: ${node.designation}`;
  details.append(summary);

  if (node.children.length > 0) {
    const children = document.createElement("div");
    children.className = "tree-children";
    for (const child of node.children) {
      children.append(renderNode(child));
    }
    details.append(children);
  }
  return details;
}

export class ProgressTree {
  readonly element: HTMLElement;

  constructor(private readonly exportUrl: (format: "ttl" | "html") => string) {
    this.element = document.createElement("section");
    this.element.className = "progress-tree";
  }

  render(view: SessionView, pendingTitle: string | null): void {
    this.element.innerHTML = "";

    const heading = document.createElement("h2");
    heading.textContent = `Progress: ${view.progress.answered} filled, ${view.progress.pending} pending`;
    this.element.append(heading);

    if (view.tree !== null) {
      this.element.append(renderNode(view.tree));
    }

    if (view.progress.pending > 0) {
      const pending = document.createElement("ul");
      pending.className = "pending";
      for (let i = 0; i < view.progress.pending; i++) {
        const item = document.createElement("li");
        item.className = "placeholder";
        item.textContent = i === 0 && pendingTitle !== null ? `${pendingTitle} (next)` : "to fill in";
        pending.append(item);
      }
      this.element.append(pending);
    }

    if (view.state === "Complete") {
      const done = document.createElement("p");
      done.className = "complete";
      done.textContent = "Document complete.";

      const downloads = document.createElement("p");
      downloads.className = "downloads";
      const ttl = document.createElement("a");
      ttl.href = this.exportUrl("ttl");
      ttl.textContent = "Download Turtle";
      ttl.setAttribute("download", `session-${view.session_id}.ttl`);
      const html = document.createElement("a");
      html.href = this.exportUrl("html");
      html.textContent = "Download HTML";
      html.setAttribute("download", `session-${view.session_id}.html`);
      downloads.append(ttl, " ", html);

      this.element.append(done, downloads);
    }
  }
}
