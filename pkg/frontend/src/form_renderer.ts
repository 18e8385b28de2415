/**
 * Schema-driven renderer for one entry form.
 *
 * One control per field, picked by datatype; a "coming next" list for the
 * component choices the answer will enqueue. Client-side checks cover what
 * free-text controls allow through (blank designation, malformed decimals);
 * everything else is the server's call, and its 422 details are attached to
 * the named fields without touching entered values.
 */

import type { FieldError, FormFieldSchema, FormSchema } from "./types.js";

// same lexical rule the service applies
const DECIMAL = /^[+-]?(\d+(\.\d*)?|\.\d+)$/;

export type SubmitHandler = (values: Record<string, string>) => void | Promise<void>;

function controlFor(field: FormFieldSchema): HTMLInputElement {
  const input = document.createElement("input");
  input.id = `field-${field.id}`;
  input.name = field.id;
  switch (field.datatype) {
    case "integer":
      input.type = "number";
      input.step = "1";
      break;
    case "decimal":
      input.type = "text";
      input.inputMode = "decimal";
      break;
    case "boolean":
      input.type = "checkbox";
      break;
    case "date":
      input.type = "date";
      break;
    default:
      input.type = "text";
  }
  return input;
}

export class FormRenderer {
  readonly element: HTMLFormElement;
  private readonly schema: FormSchema;
  private readonly inputs = new Map<string, HTMLInputElement>();
  private readonly errors = new Map<string, HTMLElement>();
  private readonly formError: HTMLElement;
  private readonly submitButton: HTMLButtonElement;

  constructor(schema: FormSchema, onSubmit: SubmitHandler) {
    this.schema = schema;
    this.element = document.createElement("form");
    this.element.className = "entry-form";
    this.element.noValidate = true;
    this.element.dataset.formId = schema.form_id;

    const title = document.createElement("h2");
    title.textContent = schema.title;
    this.element.append(title);

    for (const field of schema.fields) {
      this.element.append(this.renderField(field));
    }

    this.formError = document.createElement("p");
    this.formError.className = "form-error";
    this.formError.hidden = true;
    this.element.append(this.formError);

    this.submitButton = document.createElement("button");
    this.submitButton.type = "submit";
    this.submitButton.textContent = "Save";
    this.element.append(this.submitButton);

    if (schema.components.length > 0) {
      this.element.append(this.renderComingNext());
    }

    this.element.addEventListener("submit", (event) => {
      event.preventDefault();
      this.clearErrors();
      const problems = this.validate();
      if (problems.length > 0) {
        this.showErrors(problems);
        return;
      }
      void onSubmit(this.values());
    });
  }

  private renderField(field: FormFieldSchema): HTMLElement {
    const row = document.createElement("div");
    row.className = "field";
    row.dataset.field = field.id;

    const label = document.createElement("label");
    label.htmlFor = `field-${field.id}`;
    label.textContent = field.required ? `${field.label} *` : field.label;

    const input = controlFor(field);
    this.inputs.set(field.id, input);

    const error = document.createElement("span");
    error.className = "field-error";
    error.hidden = true;
    this.errors.set(field.id, error);

    row.append(label, input, error);
    return row;
  }

  private renderComingNext(): HTMLElement {
    const aside = document.createElement("aside");
    aside.className = "coming-next";
    const heading = document.createElement("p");
    heading.textContent = "Coming next:";
    const list = document.createElement("ul");
    for (const component of this.schema.components) {
      const item = document.createElement("li");
      item.textContent = component.label;
      list.append(item);
    }
    aside.append(heading, list);
    return aside;
  }

  /** Entered values; empty string means "not filled", unchecked boxes too. */
  values(): Record<string, string> {
    const out: Record<string, string> = {};
    for (const [id, input] of this.inputs) {
      out[id] = input.type === "checkbox" ? (input.checked ? "true" : "") : input.value;
    }
    return out;
  }

  /** Restore entered values after a re-render; unknown ids are ignored. */
  setValues(values: Record<string, string>): void {
    for (const [id, value] of Object.entries(values)) {
      const input = this.inputs.get(id);
      if (input === undefined) {
        continue;
      }
      if (input.type === "checkbox") {
        input.checked = value === "true";
      } else {
        input.value = value;
      }
    }
  }

  /** Client-side checks; a non-empty result blocks the request. */
  validate(): FieldError[] {
    const problems: FieldError[] = [];
    for (const field of this.schema.fields) {
      const input = this.inputs.get(field.id);
      if (input === undefined) {
        continue;
      }
      const value = input.type === "checkbox" ? (input.checked ? "true" : "") : input.value;
      if (field.required && value.trim() === "") {
        problems.push({ field: field.id, message: "this field is required" });
      } else if (field.datatype === "decimal" && value !== "" && !DECIMAL.test(value)) {
        problems.push({ field: field.id, message: "not a valid decimal" });
      }
    }
    return problems;
  }

  showErrors(problems: FieldError[]): void {
    const unattached: string[] = [];
    for (const problem of problems) {
      const slot = this.errors.get(problem.field);
      if (slot === undefined) {
        unattached.push(`${problem.field}: ${problem.message}`);
        continue;
      }
      slot.textContent = problem.message;
      slot.hidden = false;
    }
    if (unattached.length > 0) {
      this.formError.textContent = unattached.join("; ");
      this.formError.hidden = false;
    }
  }

  /** A message above the submit button (conflict notices, engine errors). */
  showNotice(message: string): void {
    this.formError.textContent = message;
    this.formError.hidden = false;
  }

  clearErrors(): void {
    for (const slot of this.errors.values()) {
      slot.hidden = true;
      slot.textContent = "";
    }
    this.formError.hidden = true;
    this.formError.textContent = "";
  }

  setBusy(busy: boolean): void {
    this.submitButton.disabled = busy;
  }
}
