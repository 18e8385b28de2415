/**
 * Single-page wizard: picker pane, current-form pane, progress-tree pane.
 *
 * The server owns all sequencing; this class only moves the three panes
 * through the session lifecycle. One mutation is in flight at a time (the
 * submit button is disabled while pending). A 409 revision conflict
 * refetches the session and re-renders the pending form, restoring the
 * values already entered.
 */

import { ApiClient, ApiError } from "./api.js";
import { FormRenderer } from "./form_renderer.js";
import { ProductPicker } from "./product_picker.js";
import { ProgressTree } from "./progress_tree.js";
import type { FormSchema } from "./types.js";

export interface AppOptions {
  /** Fix the session id (reproducible exports); server-generated otherwise. */
  sessionId?: string;
}

export class App {
  private readonly api: ApiClient;
  private readonly root: HTMLElement;
  private readonly options: AppOptions;

  private readonly picker: ProductPicker;
  private readonly formPane: HTMLElement;
  private readonly treePane: HTMLElement;

  private sessionId: string | null = null;
  private revision = 0;
  private schema: FormSchema | null = null;
  private renderer: FormRenderer | null = null;
  private tree: ProgressTree | null = null;

  private busy = false;
  private inflight: Promise<void> = Promise.resolve();

  constructor(root: HTMLElement, api: ApiClient, options: AppOptions = {}) {
    this.root = root;
    this.api = api;
    this.options = options;

    this.picker = new ProductPicker(api, (product) => this.track(this.startSession(product)));
    this.formPane = document.createElement("section");
    this.formPane.className = "form-pane";
    this.treePane = document.createElement("section");
    this.treePane.className = "tree-pane";

    this.root.innerHTML = "";
    this.root.append(this.picker.element, this.formPane, this.treePane);
  }

  async start(): Promise<void> {
    await this.picker.load();
  }

  /** Settles when the current mutation (if any) has finished. */
  idle(): Promise<void> {
    return this.inflight;
  }

  private track(work: Promise<void>): Promise<void> {
    this.inflight = work;
    return work;
  }

  private async startSession(product: string): Promise<void> {
    if (this.busy || this.sessionId !== null) {
      return;
    }
    this.busy = true;
    try {
      const created = await this.api.createSession(product, this.options.sessionId);
      this.sessionId = created.session_id;
      this.revision = created.revision;
      this.schema = created.form;
      this.tree = new ProgressTree((format) => this.api.exportUrl(created.session_id, format));
      this.picker.element.hidden = true;
      this.renderForm();
      await this.refreshTree();
    } catch (error) {
      this.showFatal(error);
    } finally {
      this.busy = false;
    }
  }

  private renderForm(): void {
    this.formPane.innerHTML = "";
    if (this.schema === null) {
      const done = document.createElement("p");
      done.className = "complete";
      done.textContent = "Document complete.";
      this.formPane.append(done);
      this.renderer = null;
      return;
    }
    this.renderer = new FormRenderer(this.schema, (values) => this.track(this.submit(values)));
    this.formPane.append(this.renderer.element);
  }

  private async submit(values: Record<string, string>): Promise<void> {
    if (this.busy || this.sessionId === null || this.schema === null || this.renderer === null) {
      return;
    }
    this.busy = true;
    this.renderer.setBusy(true);
    try {
      const result = await this.api.submit(
        this.sessionId,
        this.revision,
        this.schema.form_id,
        values,
      );
      this.revision = result.revision;
      this.schema = result.form;
      this.renderForm();
      await this.refreshTree();
    } catch (error) {
      if (error instanceof ApiError && error.status === 422 && error.details.length > 0) {
        this.renderer.showErrors(error.details);
      } else if (error instanceof ApiError && error.status === 409) {
        await this.recoverFromConflict(values, error.message);
      } else {
        this.renderer.showNotice(error instanceof Error ? error.message : String(error));
      }
    } finally {
      this.busy = false;
      this.renderer?.setBusy(false);
    }
  }

  /**
   * Another client moved the session: adopt the server's revision and
   * pending form, re-render, and put the entered values back into any
   * field that still exists.
   */
  private async recoverFromConflict(values: Record<string, string>, reason: string): Promise<void> {
    if (this.sessionId === null) {
      return;
    }
    const view = await this.api.view(this.sessionId);
    this.revision = view.revision;
    this.schema = await this.api.currentForm(this.sessionId);
    this.renderForm();
    if (this.renderer !== null) {
      this.renderer.setValues(values);
      this.renderer.showNotice(`the session changed elsewhere (${reason}); form reloaded`);
    }
    await this.refreshTree();
  }

  private async refreshTree(): Promise<void> {
    if (this.sessionId === null || this.tree === null) {
      return;
    }
    const view = await this.api.view(this.sessionId);
    this.tree.render(view, this.schema?.title ?? null);
    this.treePane.innerHTML = "";
    this.treePane.append(this.tree.element);
  }

  private showFatal(error: unknown): void {
    const banner = document.createElement("div");
    banner.className = "error-banner";
    banner.textContent = error instanceof Error ? error.message : String(error);
    this.formPane.innerHTML = "";
    this.formPane.append(banner);
  }
}
