/**
 * First pane: product choice in a dropdown, start button, and a banner
 * with a retry affordance when the product list cannot be fetched.
 */

import type { ApiClient } from "./api.js";

export class ProductPicker {
  readonly element: HTMLElement;
  private readonly select: HTMLSelectElement;
  private readonly startButton: HTMLButtonElement;
  private readonly banner: HTMLElement;

  constructor(
    private readonly api: ApiClient,
    private readonly onStart: (product: string) => void | Promise<void>,
  ) {
    this.element = document.createElement("section");
    this.element.className = "product-picker";

    const heading = document.createElement("h2");
    heading.textContent = "Product";

    this.banner = document.createElement("div");
    this.banner.className = "error-banner";
    this.banner.hidden = true;

    this.select = document.createElement("select");
    this.select.name = "product";

    this.startButton = document.createElement("button");
    this.startButton.type = "button";
    this.startButton.textContent = "Start";
    this.startButton.addEventListener("click", () => {
      if (this.select.value !== "") {
        void this.onStart(this.select.value);
      }
    });

    this.element.append(heading, this.banner, this.select, this.startButton);
  }

  /** Fetch the product list; on failure show the banner and a retry button. */
  async load(): Promise<void> {
    this.banner.hidden = true;
    this.banner.textContent = "";
    try {
      const products = await this.api.products();
      this.select.innerHTML = "";
      if (products.length === 0) {
        const empty = document.createElement("option");
        empty.value = "";
        empty.textContent = "no products available in this ontology";
        this.select.append(empty);
        this.select.disabled = true;
        this.startButton.disabled = true;
        return;
      }
      for (const product of products) {
        const option = document.createElement("option");
        option.value = product.iri;
        option.textContent = product.label;
        this.select.append(option);
      }
      this.select.disabled = false;
      this.startButton.disabled = false;
    } catch (error) {
      this.select.disabled = true;
      this.startButton.disabled = true;
      this.banner.textContent =
        error instanceof Error ? `cannot reach the service: ${error.message}` : "cannot reach the service";
      const retry = document.createElement("button");
      retry.type = "button";
      retry.textContent = "Retry";
      retry.addEventListener("click", () => void this.load());
      this.banner.append(" ", retry);
      this.banner.hidden = false;
    }
  }
}
