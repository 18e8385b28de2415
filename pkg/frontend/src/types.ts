/**
 * JSON contracts of the form service, mirrored from the backend README.
 * The UI renders these verbatim; it never derives ontology structure itself.
 */

export type FieldDatatype = "string" | "decimal" | "integer" | "boolean" | "date";

export type SessionState = "InProgress" | "Complete";

export interface ProductOption {
  iri: string;
  label: string;
}

export interface FormFieldSchema {
  id: string;
  label: string;
  datatype: FieldDatatype;
  required: boolean;
}

/** A component the server will ask about next ("coming next" list). */
export interface ComponentChoice {
  property: string;
  concept: string;
  label: string;
}

export interface FormSchema {
  form_id: string;
  concept: string;
  title: string;
  fields: FormFieldSchema[];
  components: ComponentChoice[];
}

export interface Progress {
  answered: number;
  pending: number;
}

/** Answered-instance tree as returned by GET /api/sessions/{id}. */
export interface TreeNode {
  instance: string;
  concept: string;
  label: string;
  designation: string;
  children: TreeNode[];
}

export interface SessionView {
  session_id: string;
  state: SessionState;
  revision: number;
  progress: Progress;
  product: ProductOption;
  tree: TreeNode | null;
}

export interface CreatedSession {
  session_id: string;
  revision: number;
  state: SessionState;
  form: FormSchema;
}

export interface AnswerResult {
  revision: number;
  state: SessionState;
  progress: Progress;
  form: FormSchema | null;
}

export interface FieldError {
  field: string;
  message: string;
}

export interface ErrorBody {
  code: string;
  message: string;
  details?: FieldError[];
}
